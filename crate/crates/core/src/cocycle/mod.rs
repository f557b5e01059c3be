//! Cochains of the prismatic complex with values in `ℤ` or `ℤ_m`:
//! biquandle cocycles and their lifts, the Alexander-family cocycles
//! `Φ_f`, and verification of the cocycle condition.

mod alexander;
mod bq;
mod verify;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::chain::{Chain, PrismGen};
use crate::error::{Error, Result};

pub use alexander::{AlexanderCocycle, AlexanderKind, MultilinearForm};
pub use bq::{
    lift_2cocycle, lift_3cocycle, lift_cocycle, liftable_cocycles, verify_bq_cocycle, BQCocycle, BqWitness, Lift,
    MAX_SOLVE_COLUMNS,
};
pub use verify::{verify_mcb_cocycle, CocycleReport, CocycleViolation, VerifyOptions, DEFAULT_SAMPLES};

/// The coefficient group: `ℤ` when `modulus == 0`, otherwise `ℤ_modulus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coefficients {
    pub modulus: u64,
}

impl Coefficients {
    pub fn integers() -> Self {
        Coefficients { modulus: 0 }
    }

    pub fn cyclic(m: u64) -> Self {
        assert!(m >= 1, "ℤ_0 is written as the integers");
        Coefficients { modulus: m }
    }

    /// The canonical representative: a residue in `0..m`, or `v` itself.
    #[inline]
    pub fn reduce(&self, v: i64) -> i64 {
        if self.modulus == 0 {
            v
        } else {
            v.rem_euclid(self.modulus as i64)
        }
    }

    pub fn reduce_big(&self, v: &BigInt) -> Result<i64> {
        let r = if self.modulus == 0 { v.clone() } else { v.mod_floor(&BigInt::from(self.modulus)) };
        r.to_i64().ok_or_else(|| Error::structural(format!("cochain value {v} does not fit in 64 bits")))
    }

    #[inline]
    pub fn add(&self, a: i64, b: i64) -> i64 {
        self.reduce(a + b)
    }

    #[inline]
    pub fn neg(&self, a: i64) -> i64 {
        self.reduce(-a)
    }

    /// `k · a` for a small integer `k`.
    #[inline]
    pub fn scale(&self, k: i64, a: i64) -> i64 {
        if self.modulus == 0 {
            k * a
        } else {
            let m = self.modulus as i128;
            ((k as i128 * a as i128).rem_euclid(m)) as i64
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus {
            0 => write!(f, "Z"),
            m => write!(f, "Z/{m}"),
        }
    }
}

/// A homomorphism `P_n(X)_Y → A`, given by its values on generators.
pub trait Cochain: Send + Sync {
    fn degree(&self) -> usize;

    fn coefficients(&self) -> Coefficients;

    /// The value on `⟨y⟩⟨blocks[0]⟩⋯`, reduced.
    fn eval(&self, y: u32, blocks: &[&[u32]]) -> i64;

    fn eval_gen(&self, g: &PrismGen) -> i64 {
        let blocks: Vec<&[u32]> = g.blocks.iter().map(Vec::as_slice).collect();
        self.eval(g.y, &blocks)
    }

    fn eval_chain(&self, c: &Chain) -> Result<i64> {
        let a = self.coefficients();
        let mut acc = BigInt::from(0);
        for (g, k) in c.iter() {
            acc += k * self.eval_gen(g);
        }
        a.reduce_big(&acc)
    }
}

/// A cochain stored as a table: a dense array over the generators whose
/// blocks all have length one, plus explicit values elsewhere (zero if
/// absent).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableCochain {
    degree: usize,
    coefficients: Coefficients,
    carrier: usize,
    points: usize,
    simple: Vec<i64>,
    other: HashMap<PrismGen, i64>,
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    degree: usize,
    modulus: u64,
    carrier: usize,
    points: usize,
    /// Indexed by `((y·|X| + x₁)·|X| + x₂)⋯`.
    simple: Vec<i64>,
    #[serde(default)]
    other: Vec<OtherEntry>,
}

#[derive(Serialize, Deserialize)]
struct OtherEntry {
    y: u32,
    blocks: Vec<Vec<u32>>,
    value: i64,
}

impl TableCochain {
    pub fn zero(degree: usize, coefficients: Coefficients, carrier: usize, points: usize) -> Self {
        let len = points * carrier.pow(degree as u32);
        TableCochain { degree, coefficients, carrier, points, simple: vec![0; len], other: HashMap::new() }
    }

    /// Tabulates `f` on the all-length-one generators `(y, [x₁,…,x_n])`;
    /// every other generator gets zero.
    pub fn from_simple(
        degree: usize,
        coefficients: Coefficients,
        carrier: usize,
        points: usize,
        f: impl Fn(usize, &[usize]) -> i64,
    ) -> Self {
        let mut t = Self::zero(degree, coefficients, carrier, points);
        let mut xs = vec![0usize; degree];
        for (i, slot) in t.simple.iter_mut().enumerate() {
            let mut r = i;
            for x in xs.iter_mut().rev() {
                *x = r % carrier;
                r /= carrier;
            }
            *slot = coefficients.reduce(f(r, &xs));
        }
        t
    }

    /// Tabulates any cochain on the all-length-one generators and on the
    /// given extra generators.
    pub fn tabulate<C: Cochain + ?Sized>(
        c: &C,
        carrier: usize,
        points: usize,
        extra: impl IntoIterator<Item = PrismGen>,
    ) -> Self {
        let n = c.degree();
        let mut t = Self::from_simple(n, c.coefficients(), carrier, points, |y, xs| {
            let cols: Vec<[u32; 1]> = xs.iter().map(|&x| [x as u32]).collect();
            let blocks: Vec<&[u32]> = cols.iter().map(|b| &b[..]).collect();
            c.eval(y as u32, &blocks)
        });
        for g in extra {
            let v = c.eval_gen(&g);
            t.set(g, v);
        }
        t
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn points(&self) -> usize {
        self.points
    }

    fn simple_index(&self, y: u32, blocks: &[&[u32]]) -> usize {
        blocks.iter().fold(y as usize, |acc, b| acc * self.carrier + b[0] as usize)
    }

    /// Sets the value on one generator.
    pub fn set(&mut self, g: PrismGen, v: i64) {
        let v = self.coefficients.reduce(v);
        if g.blocks.len() == self.degree && g.blocks.iter().all(|b| b.len() == 1) {
            let blocks: Vec<&[u32]> = g.blocks.iter().map(Vec::as_slice).collect();
            let i = self.simple_index(g.y, &blocks);
            self.simple[i] = v;
        } else if v == 0 {
            self.other.remove(&g);
        } else {
            self.other.insert(g, v);
        }
    }

    /// Pointwise `self + other`.
    pub fn add(&self, other: &TableCochain) -> Result<TableCochain> {
        if (self.degree, self.coefficients, self.carrier, self.points)
            != (other.degree, other.coefficients, other.carrier, other.points)
        {
            return Err(Error::structural("cochains live on different complexes"));
        }
        let a = self.coefficients;
        let mut out = self.clone();
        for (x, y) in out.simple.iter_mut().zip(&other.simple) {
            *x = a.add(*x, *y);
        }
        for (g, v) in &other.other {
            let cur = out.other.get(g).copied().unwrap_or(0);
            out.set(g.clone(), a.add(cur, *v));
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.simple.iter().all(|&v| v == 0) && self.other.is_empty()
    }

    pub fn to_json(&self) -> String {
        let mut other: Vec<OtherEntry> = self
            .other
            .iter()
            .map(|(g, &value)| OtherEntry { y: g.y, blocks: g.blocks.clone(), value })
            .collect();
        other.sort_by(|a, b| (a.y, &a.blocks).cmp(&(b.y, &b.blocks)));
        let f = TableFile {
            degree: self.degree,
            modulus: self.coefficients.modulus,
            carrier: self.carrier,
            points: self.points,
            simple: self.simple.clone(),
            other,
        };
        serde_json::to_string(&f).expect("tables serialise")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: TableFile = serde_json::from_str(text)?;
        let coefficients = Coefficients { modulus: f.modulus };
        let mut t = Self::zero(f.degree, coefficients, f.carrier, f.points);
        if f.simple.len() != t.simple.len() {
            return Err(Error::structural(format!(
                "table has {} entries, expected {}",
                f.simple.len(),
                t.simple.len()
            )));
        }
        t.simple = f.simple.into_iter().map(|v| coefficients.reduce(v)).collect();
        for e in f.other {
            if e.y as usize >= t.points || e.blocks.iter().flatten().any(|&x| x as usize >= t.carrier) {
                return Err(Error::structural("table entry out of range"));
            }
            t.set(PrismGen::new(e.y, e.blocks), e.value);
        }
        Ok(t)
    }
}

impl Cochain for TableCochain {
    fn degree(&self) -> usize {
        self.degree
    }

    fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    fn eval(&self, y: u32, blocks: &[&[u32]]) -> i64 {
        if blocks.len() == self.degree {
            return self.simple[self.simple_index(y, blocks)];
        }
        let g = PrismGen::new(y, blocks.iter().map(|b| b.to_vec()).collect());
        self.other.get(&g).copied().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests;
