use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::Cochain;
use crate::chain::{Chain, Complex, PrismGen, DEFAULT_GENERATOR_CAP};
use crate::error::{Error, Result};
use crate::mcb::Mcb;

/// Samples drawn when the exhaustive check is over the cap.
pub const DEFAULT_SAMPLES: u64 = 1_000_000;

const CHUNK: u64 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Largest degree-`(n+1)` generator count checked exhaustively.
    pub generator_cap: usize,
    /// Samples to draw above the cap; zero makes the cap an error.
    pub samples: u64,
    pub seed: u64,
    /// Sample even when an exhaustive check would fit.
    pub force_sampling: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { generator_cap: DEFAULT_GENERATOR_CAP, samples: DEFAULT_SAMPLES, seed: 1, force_sampling: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CocycleViolation {
    /// An element of `D_n` with nonzero value.
    Degenerate { chain: Chain, value: i64 },
    /// A generator `g` of degree `n+1` with `θ(∂g) ≠ 0`.
    Boundary { generator: PrismGen, value: i64 },
}

impl fmt::Display for CocycleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CocycleViolation::Degenerate { chain, value } => {
                write!(f, "nonzero value {value} on the degenerate chain {chain}")
            }
            CocycleViolation::Boundary { generator, value } => {
                write!(f, "value {value} on the boundary of {generator}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleReport {
    pub degree: usize,
    /// Degree-`(n+1)` generators checked (or samples drawn).
    pub checked: u64,
    /// The check drew random samples instead of covering everything.
    pub sampled: bool,
    pub violation: Option<CocycleViolation>,
}

impl CocycleReport {
    pub fn verified(&self) -> bool {
        self.violation.is_none()
    }
}

impl fmt::Display for CocycleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let how = if self.sampled {
            format!("random sample of {} generators", self.checked)
        } else {
            format!("exhaustive over {} generators", self.checked)
        };
        match &self.violation {
            None => write!(f, "degree-{} cocycle: verified ({how})", self.degree),
            Some(v) => write!(f, "degree-{} cocycle: FAILED ({how}): {v}", self.degree),
        }
    }
}

/// Checks that `θ` vanishes on `D_n` and on `∂P_{n+1}`.
///
/// Exhaustive when the number of degree-`(n+1)` generators is within the
/// cap; otherwise a seeded random sample is drawn and the report is marked
/// as sampled.
pub fn verify_mcb_cocycle<M: Mcb + ?Sized, C: Cochain + ?Sized>(
    c: &Complex<'_, M>,
    theta: &C,
    opts: &VerifyOptions,
) -> Result<CocycleReport> {
    let n = theta.degree();
    let count = c.generator_count(n + 1);
    if !opts.force_sampling && count <= opts.generator_cap as u128 {
        return Ok(exhaustive(c, theta, n, count as u64));
    }
    if opts.samples == 0 {
        return Err(Error::budget(format!(
            "degree {} has {count} prismatic generators, above the cap of {}; sampling is disabled",
            n + 1,
            opts.generator_cap
        )));
    }
    Ok(sampled(c, theta, n, opts))
}

fn boundary_value<M: Mcb + ?Sized, C: Cochain + ?Sized>(c: &Complex<'_, M>, theta: &C, g: &PrismGen) -> i64 {
    let a = theta.coefficients();
    let mut acc = 0i64;
    c.boundary_terms(g, |s, t| acc = a.add(acc, a.scale(s, theta.eval_gen(&t))));
    acc
}

fn degenerate_violation<M: Mcb + ?Sized, C: Cochain + ?Sized>(
    c: &Complex<'_, M>,
    theta: &C,
    g: &PrismGen,
    i: usize,
) -> Option<CocycleViolation> {
    let d = c.degenerate_at(g, i).ok()??;
    let value = theta.eval_chain(&d).ok()?;
    (value != 0).then_some(CocycleViolation::Degenerate { chain: d, value })
}

fn check_generator<M: Mcb + ?Sized, C: Cochain + ?Sized>(
    c: &Complex<'_, M>,
    theta: &C,
    g: &PrismGen,
) -> Option<CocycleViolation> {
    let value = boundary_value(c, theta, g);
    (value != 0).then(|| CocycleViolation::Boundary { generator: g.clone(), value })
}

fn exhaustive<M: Mcb + ?Sized, C: Cochain + ?Sized>(
    c: &Complex<'_, M>,
    theta: &C,
    n: usize,
    count: u64,
) -> CocycleReport {
    let m = c.mcb();
    let roots: Vec<(u32, u32)> = (0..c.xset().num_points() as u32)
        .flat_map(|y| (0..m.size() as u32).map(move |a| (y, a)))
        .collect();
    let degenerate = roots.par_iter().find_map_first(|&(y, a)| {
        let mut found = None;
        for_each_rooted(m, n, y, a, &mut |g| {
            if found.is_none() {
                found = (0..g.blocks.len().saturating_sub(1)).find_map(|i| degenerate_violation(c, theta, g, i));
            }
        });
        found
    });
    let violation = degenerate.or_else(|| {
        roots.par_iter().find_map_first(|&(y, a)| {
            let mut found = None;
            for_each_rooted(m, n + 1, y, a, &mut |g| {
                if found.is_none() {
                    found = check_generator(c, theta, g);
                }
            });
            found
        })
    });
    CocycleReport { degree: n, checked: count, sampled: false, violation }
}

/// Generators of degree `n ≥ 1` with region colour `y` whose first entry is `a`.
fn for_each_rooted<M: Mcb + ?Sized>(m: &M, n: usize, y: u32, a: u32, f: &mut dyn FnMut(&PrismGen)) {
    let members = m.group_members(m.group_of(a as usize));
    let mut g = PrismGen::new(y, Vec::new());
    for len in 1..=n {
        let mut idx = vec![0usize; len - 1];
        loop {
            let mut first = vec![a];
            first.extend(idx.iter().map(|&i| members[i]));
            g.blocks.push(first);
            walk(m, n - len, &mut g, f);
            g.blocks.pop();
            if !bump(&mut idx, members.len()) {
                break;
            }
        }
    }
}

fn walk<M: Mcb + ?Sized>(m: &M, left: usize, g: &mut PrismGen, f: &mut dyn FnMut(&PrismGen)) {
    if left == 0 {
        f(g);
        return;
    }
    for a in 0..m.size() as u32 {
        let members = m.group_members(m.group_of(a as usize));
        for len in 1..=left {
            let mut idx = vec![0usize; len - 1];
            loop {
                let mut b = vec![a];
                b.extend(idx.iter().map(|&i| members[i]));
                g.blocks.push(b);
                walk(m, left - len, g, f);
                g.blocks.pop();
                if !bump(&mut idx, members.len()) {
                    break;
                }
            }
        }
    }
}

fn bump(v: &mut [usize], base: usize) -> bool {
    for x in v.iter_mut().rev() {
        *x += 1;
        if *x < base {
            return true;
        }
        *x = 0;
    }
    false
}

/// A random generator of degree `k`: each gap between entries starts a
/// new block with probability ½, block heads are uniform in the carrier
/// and the other entries uniform in the head's group.
fn random_generator<M: Mcb + ?Sized>(m: &M, points: usize, k: usize, rng: &mut ChaCha8Rng) -> PrismGen {
    let mut g = PrismGen::new(rng.gen_range(0..points) as u32, Vec::new());
    for pos in 0..k {
        if pos == 0 || rng.gen_bool(0.5) {
            g.blocks.push(vec![rng.gen_range(0..m.size()) as u32]);
        } else {
            let b = g.blocks.last_mut().expect("a block was opened");
            let members = m.group_members(m.group_of(b[0] as usize));
            b.push(members[rng.gen_range(0..members.len())]);
        }
    }
    g
}

fn sampled<M: Mcb + ?Sized, C: Cochain + ?Sized>(
    c: &Complex<'_, M>,
    theta: &C,
    n: usize,
    opts: &VerifyOptions,
) -> CocycleReport {
    let m = c.mcb();
    let points = c.xset().num_points();
    let chunks = opts.samples.div_ceil(CHUNK);
    let violation = (0..chunks).into_par_iter().find_map_first(|chunk| {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ chunk.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let len = CHUNK.min(opts.samples - chunk * CHUNK);
        for _ in 0..len {
            let g = random_generator(m, points, n + 1, &mut rng);
            if let Some(v) = check_generator(c, theta, &g) {
                return Some(v);
            }
            if n >= 2 {
                let mut d = random_generator(m, points, n, &mut rng);
                if d.blocks.len() >= 2 {
                    let i = rng.gen_range(0..d.blocks.len() - 1);
                    let members = m.group_members(m.group_of(d.blocks[i][0] as usize));
                    for x in d.blocks[i + 1].iter_mut() {
                        *x = members[rng.gen_range(0..members.len())];
                    }
                    if let Some(v) = degenerate_violation(c, theta, &d, i) {
                        return Some(v);
                    }
                }
            }
        }
        None
    });
    CocycleReport { degree: n, checked: opts.samples, sampled: true, violation }
}
