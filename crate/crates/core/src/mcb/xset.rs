use super::{AssocMcb, Mcb};
use crate::algebra::{FinBiquandle, GFamily};
use crate::error::{Error, Result};

/// A right action `y ∗ a` of a carrier `0..carrier_size()` on the points
/// `0..num_points()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XSetAction {
    points: usize,
    carrier: usize,
    /// Flat `[y][a]`.
    table: Vec<u32>,
    /// Flat `[a][t]`: the `y` with `y ∗ a = t`, or `u32::MAX`.
    inv: Vec<u32>,
}

impl XSetAction {
    fn from_flat(points: usize, carrier: usize, table: Vec<u32>) -> Self {
        let mut inv = vec![u32::MAX; points * carrier];
        for y in 0..points {
            for a in 0..carrier {
                inv[a * points + table[y * carrier + a] as usize] = y as u32;
            }
        }
        XSetAction { points, carrier, table, inv }
    }

    pub fn from_fn(points: usize, carrier: usize, act: impl Fn(usize, usize) -> usize) -> Self {
        let table = (0..points * carrier).map(|i| act(i / carrier, i % carrier) as u32).collect();
        Self::from_flat(points, carrier, table)
    }

    /// `table[y][a] = y ∗ a`.
    pub fn from_table(carrier: usize, table: &[Vec<usize>]) -> Result<Self> {
        let points = table.len();
        if points == 0 {
            return Err(Error::structural("an X-set needs at least one point"));
        }
        if table.iter().any(|r| r.len() != carrier || r.iter().any(|&v| v >= points)) {
            return Err(Error::structural(format!(
                "action table must have rows of length {carrier} with entries below {points}"
            )));
        }
        Ok(Self::from_fn(points, carrier, |y, a| table[y][a]))
    }

    /// The one-point X-set.
    pub fn trivial(carrier: usize) -> Self {
        Self::from_fn(1, carrier, |_, _| 0)
    }

    /// `Y = X` with `y ∗ a = y ⋇̲ a`.
    pub fn self_under<M: Mcb + ?Sized>(m: &M) -> Self {
        Self::from_fn(m.size(), m.size(), |y, a| m.under(y, a))
    }

    /// `Y = X` with `y ∗ a = y ⋇̄ a`.
    pub fn self_over<M: Mcb + ?Sized>(m: &M) -> Self {
        Self::from_fn(m.size(), m.size(), |y, a| m.over(y, a))
    }

    /// `Y = Λ` with `λ ∗ x = μ` when `e_λ ⋇̲ x = e_μ`.
    pub fn index_set<M: Mcb + ?Sized>(m: &M) -> Result<Self> {
        let k = m.num_groups();
        let n = m.size();
        let mut table = vec![0u32; k * n];
        for l in 0..k {
            let e = m.identity(l);
            for x in 0..n {
                let v = m.under(e, x);
                if !m.is_identity(v) {
                    return Err(Error::axiom(format!(
                        "e_{l} ⋇̲ {} = {} is not an identity",
                        m.label(x),
                        m.label(v)
                    )));
                }
                table[l * n + x] = m.group_of(v) as u32;
            }
        }
        Ok(Self::from_flat(k, n, table))
    }

    /// `Y = X` with `y ∗ a = y ⋇̲ a` for a plain biquandle.
    pub fn biquandle_under(x: &FinBiquandle) -> Self {
        Self::from_fn(x.size(), x.size(), |y, a| x.under(y, a))
    }

    pub fn num_points(&self) -> usize {
        self.points
    }

    pub fn carrier_size(&self) -> usize {
        self.carrier
    }

    #[inline]
    pub fn act(&self, y: usize, a: usize) -> usize {
        self.table[y * self.carrier + a] as usize
    }

    /// The `y` with `y ∗ a = t`; `None` if `∗ a` is not injective there.
    #[inline]
    pub fn act_inv(&self, t: usize, a: usize) -> Option<usize> {
        let y = self.inv[a * self.points + t];
        (y != u32::MAX && self.act(y as usize, a) == t).then_some(y as usize)
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.carrier).map(|r| r.iter().map(|&v| v as usize).collect()).collect()
    }

    /// `y ∗^[n] a` for `n ≥ 0` over a plain biquandle:
    /// `y ∗^[k+1] a = (y ∗^[k] a) ∗ (a ⋇̲^[k] a)`.
    pub fn parallel_act(&self, x: &FinBiquandle, y: usize, a: usize, n: usize) -> usize {
        let (mut y, mut d) = (y, a);
        for _ in 0..n {
            y = self.act(y, d);
            d = x.under(d, d);
        }
        y
    }
}

/// Lifts a biquandle X-set to the associated MCB `X × ℤ_t`, `t = type X_Y`,
/// via `y ∗ (x, n) = y ∗^[n] x`.
pub fn xset_from_parallel(x: &FinBiquandle, base: &XSetAction) -> Result<(AssocMcb, XSetAction)> {
    let t = x.type_with_xset(base)?;
    let (u, o) = x.parallel_tables(t);
    let fam = GFamily::new(crate::algebra::FinGroup::cyclic(t), x.size(), u, o)?;
    let mcb = AssocMcb::new(fam);
    let act = XSetAction::from_fn(base.num_points(), x.size() * t, |y, a| base.parallel_act(x, y, a / t, a % t));
    Ok((mcb, act))
}
