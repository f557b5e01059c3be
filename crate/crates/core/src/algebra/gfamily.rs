use rayon::prelude::*;

use super::biquandle::{column_inverse, FinBiquandle, MAX_TABLE_ENTRIES};
use super::group::FinGroup;
use crate::error::{Error, Result};
use crate::report::AxiomReport;

/// A `G`-family of biquandles: operations `⋇̲^g`, `⋇̄^g` on `0..|X|` for
/// every `g` in a finite group `G`.
#[derive(Clone, Debug)]
pub struct GFamily {
    nx: usize,
    group: FinGroup,
    /// Flat `[g][x][y]`.
    under: Vec<u32>,
    over: Vec<u32>,
    /// Flat `[g][y][a]`: the `x` with `x ⋇^g y = a`, or `u32::MAX`.
    under_inv: Vec<u32>,
    over_inv: Vec<u32>,
}

impl GFamily {
    /// Tables are given per group element as `|X|×|X|` row-major slices.
    pub fn new(group: FinGroup, nx: usize, under: Vec<u32>, over: Vec<u32>) -> Result<Self> {
        let ng = group.order();
        if nx == 0 {
            return Err(Error::structural("empty base set"));
        }
        if nx * nx * ng > MAX_TABLE_ENTRIES {
            return Err(Error::budget(format!(
                "family tables need {} entries, limit is {MAX_TABLE_ENTRIES}",
                nx * nx * ng
            )));
        }
        for (name, t) in [("under", &under), ("over", &over)] {
            if t.len() != nx * nx * ng {
                return Err(Error::structural(format!(
                    "{name} tables have {} entries, expected {}",
                    t.len(),
                    nx * nx * ng
                )));
            }
            if let Some(v) = t.iter().find(|&&v| v as usize >= nx) {
                return Err(Error::structural(format!("{name} entry {v} out of range 0..{nx}")));
            }
        }
        let inverse = |t: &[u32]| -> Vec<u32> {
            t.chunks(nx * nx)
                .flat_map(|c| column_inverse(nx, c).unwrap_or_else(|| vec![u32::MAX; nx * nx]))
                .collect()
        };
        let under_inv = inverse(&under);
        let over_inv = inverse(&over);
        Ok(GFamily { nx, group, under, over, under_inv, over_inv })
    }

    pub(crate) fn from_fn(
        group: FinGroup,
        nx: usize,
        under: impl Fn(usize, usize, usize) -> usize,
        over: impl Fn(usize, usize, usize) -> usize,
    ) -> Result<Self> {
        let ng = group.order();
        let mut u = Vec::with_capacity(ng * nx * nx);
        let mut o = Vec::with_capacity(ng * nx * nx);
        for g in 0..ng {
            for x in 0..nx {
                for y in 0..nx {
                    u.push(under(g, x, y) as u32);
                    o.push(over(g, x, y) as u32);
                }
            }
        }
        Self::new(group, nx, u, o)
    }

    /// The `ℤ_{type X}`-family of parallel operations of `x`.
    pub fn from_parallel(x: &FinBiquandle) -> Result<Self> {
        let t = x.biquandle_type()?;
        let (u, o) = x.parallel_tables(t);
        Self::new(FinGroup::cyclic(t), x.size(), u, o)
    }

    pub fn base_size(&self) -> usize {
        self.nx
    }

    pub fn group(&self) -> &FinGroup {
        &self.group
    }

    #[inline]
    pub fn under(&self, g: usize, x: usize, y: usize) -> usize {
        self.under[(g * self.nx + x) * self.nx + y] as usize
    }

    #[inline]
    pub fn over(&self, g: usize, x: usize, y: usize) -> usize {
        self.over[(g * self.nx + x) * self.nx + y] as usize
    }

    /// The `x` with `x ⋇̲^g y = a` (`usize::MAX`-like sentinel if none).
    #[inline]
    pub fn under_inv(&self, g: usize, a: usize, y: usize) -> usize {
        self.under_inv[(g * self.nx + y) * self.nx + a] as usize
    }

    #[inline]
    pub fn over_inv(&self, g: usize, a: usize, y: usize) -> usize {
        self.over_inv[(g * self.nx + y) * self.nx + a] as usize
    }

    /// The biquandle `(X, ⋇̲^g, ⋇̄^g)` for one `g`.
    pub fn member(&self, g: usize) -> FinBiquandle {
        let s = g * self.nx * self.nx..(g + 1) * self.nx * self.nx;
        FinBiquandle::from_flat(self.nx, self.under[s.clone()].to_vec(), self.over[s].to_vec())
    }

    /// Checks every family axiom exhaustively; witnesses are `[g, h, x, y, z]`
    /// for the exchange laws and `[g, h, x, y]` for the product laws.
    pub fn verify(&self) -> AxiomReport {
        let (nx, ng) = (self.nx, self.group.order());
        let gr = &self.group;
        let mut r = AxiomReport::new();
        let pairs = ng * ng;

        let exchange = |law: u8| -> Option<Vec<usize>> {
            (0..pairs).into_par_iter().find_map_first(|p| {
                let (g, h) = (p / ng, p % ng);
                let k = gr.conjugate(g, h);
                for y in 0..nx {
                    for z in 0..nx {
                        let zg = self.over(g, z, y);
                        let yh = self.under(h, y, z);
                        for x in 0..nx {
                            let ok = match law {
                                0 => self.under(h, self.under(g, x, y), zg) == self.under(k, self.under(h, x, z), yh),
                                1 => self.under(h, self.over(g, x, y), zg) == self.over(k, self.under(h, x, z), yh),
                                _ => self.over(h, self.over(g, x, y), zg) == self.over(k, self.over(h, x, z), yh),
                            };
                            if !ok {
                                return Some(vec![g, h, x, y, z]);
                            }
                        }
                    }
                }
                None
            })
        };
        r.push("exchange-under-under", exchange(0));
        r.push("exchange-over-under", exchange(1));
        r.push("exchange-over-over", exchange(2));

        let product = |over: bool| -> Option<Vec<usize>> {
            let op = |g, x, y| if over { self.over(g, x, y) } else { self.under(g, x, y) };
            (0..pairs).into_par_iter().find_map_first(|p| {
                let (g, h) = (p / ng, p % ng);
                let gh = gr.mul(g, h);
                for x in 0..nx {
                    for y in 0..nx {
                        if op(gh, x, y) != op(h, op(g, x, y), op(g, y, y)) {
                            return Some(vec![g, h, x, y]);
                        }
                    }
                }
                None
            })
        };
        let identity = |over: bool| -> Option<Vec<usize>> {
            let e = gr.identity();
            (0..nx * nx).find_map(|i| {
                let (x, y) = (i / nx, i % nx);
                let v = if over { self.over(e, x, y) } else { self.under(e, x, y) };
                (v != x).then(|| vec![x, y])
            })
        };
        r.push("under-product", product(false));
        r.push("under-identity", identity(false));
        r.push("over-product", product(true));
        r.push("over-identity", identity(true));
        r.push(
            "diagonal",
            (0..ng * nx).find_map(|i| {
                let (g, x) = (i / nx, i % nx);
                (self.under(g, x, x) != self.over(g, x, x)).then(|| vec![g, x])
            }),
        );
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_parallel_family() {
        let f = GFamily::from_parallel(&FinBiquandle::dihedral(3)).unwrap();
        assert_eq!(f.group().order(), 2);
        assert!(f.verify().certified());
        assert_eq!(f.under(1, 0, 1), 2);
    }

    #[test]
    fn trivial_parallel_family_is_z1() {
        let f = GFamily::from_parallel(&FinBiquandle::trivial(4)).unwrap();
        assert_eq!(f.group().order(), 1);
        assert!(f.verify().certified());
    }

    #[test]
    fn corrupted_entry_is_caught() {
        let f = GFamily::from_parallel(&FinBiquandle::dihedral(3)).unwrap();
        let mut u = f.under.clone();
        u[9 + 1] = 0;
        let bad = GFamily::new(f.group.clone(), 3, u, f.over.clone()).unwrap();
        assert!(!bad.verify().certified());
    }
}
