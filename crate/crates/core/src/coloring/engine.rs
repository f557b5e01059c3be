use std::sync::atomic::{AtomicU64, Ordering};

use super::plan::{Pair, Plan, RegionPlan, RegionStep, Step, VPair};
use crate::algebra::GFamily;
use crate::error::{Error, Result};
use crate::mcb::{Mcb, XSetAction};

pub(crate) const NONE: u32 = u32::MAX;

/// The local colouring relations the search propagates through.
pub(crate) trait Rules: Sync {
    fn domain(&self) -> usize;
    /// `(u_L ⋇̲ o_L, o_L ⋇̄ u_L)`.
    fn fwd(&self, site: usize, ul: u32, ol: u32) -> (u32, u32);
    /// The `u_L` with `u_L ⋇̲ o_L = u_R`.
    fn solve_ul(&self, site: usize, ur: u32, ol: u32) -> u32;
    /// The `o_L` with `o_L ⋇̄ u_L = o_R`.
    fn solve_ol(&self, site: usize, ul: u32, or: u32) -> u32;
    /// `c = a⁻¹b ⋇̄ a`, if `a` and `b` share a group.
    fn vertex_c(&self, site: usize, a: u32, b: u32) -> Option<u32>;
    /// The `b` in the group of `a` with `a⁻¹b ⋇̄ a = c`.
    fn vertex_b(&self, site: usize, a: u32, c: u32) -> Option<u32>;
    /// Candidates sharing a group with `known`.
    fn partners(&self, site_known: u32) -> &[u32];

    /// Inverts `S` by scanning `o_L`.
    fn bwd(&self, site: usize, ur: u32, or: u32) -> Option<(u32, u32)> {
        (0..self.domain() as u32).find_map(|ol| {
            let ul = self.solve_ul(site, ur, ol);
            (ul != NONE && self.fwd(site, ul, ol).1 == or).then_some((ul, ol))
        })
    }
}

/// Rules of a whole MCB.
pub(crate) struct McbRules<'a, M: Mcb> {
    pub m: &'a M,
}

impl<M: Mcb> Rules for McbRules<'_, M> {
    fn domain(&self) -> usize {
        self.m.size()
    }
    #[inline]
    fn fwd(&self, _: usize, ul: u32, ol: u32) -> (u32, u32) {
        let (ul, ol) = (ul as usize, ol as usize);
        (self.m.under(ul, ol) as u32, self.m.over(ol, ul) as u32)
    }
    #[inline]
    fn solve_ul(&self, _: usize, ur: u32, ol: u32) -> u32 {
        self.m.under_inv(ur as usize, ol as usize) as u32
    }
    #[inline]
    fn solve_ol(&self, _: usize, ul: u32, or: u32) -> u32 {
        self.m.over_inv(or as usize, ul as usize) as u32
    }
    #[inline]
    fn vertex_c(&self, _: usize, a: u32, b: u32) -> Option<u32> {
        let (a, b) = (a as usize, b as usize);
        self.m.same_group(a, b).then(|| self.m.vertex_third(a, b) as u32)
    }
    fn vertex_b(&self, _: usize, a: u32, c: u32) -> Option<u32> {
        let a = a as usize;
        let t = self.m.over_inv(c as usize, a);
        (t < self.m.size() && self.m.same_group(t, a)).then(|| self.m.mul(a, t) as u32)
    }
    fn partners(&self, known: u32) -> &[u32] {
        self.m.group_members(self.m.group_of(known as usize))
    }
}

/// The `X`-coordinates of a colouring by `X × G` once the `G`-coordinates
/// are fixed. Element `(x, g)` of the associated MCB satisfies
/// `(x,g) ⋇̲ (y,h) = (x ⋇̲^h y, ·)` and `(x,g) ⋇̄ (y,h) = (x ⋇̄^h y, ·)`.
pub(crate) struct FiberRules<'a> {
    pub fam: &'a GFamily,
    pub g: &'a [u32],
    pub cross: &'a [[usize; 4]],
    pub verts: &'a [[usize; 3]],
    pub singletons: &'a [u32],
}

impl Rules for FiberRules<'_> {
    fn domain(&self) -> usize {
        self.fam.base_size()
    }
    #[inline]
    fn fwd(&self, site: usize, ul: u32, ol: u32) -> (u32, u32) {
        let q = self.cross[site];
        let (gu, go) = (self.g[q[0]] as usize, self.g[q[1]] as usize);
        (
            self.fam.under(go, ul as usize, ol as usize) as u32,
            self.fam.over(gu, ol as usize, ul as usize) as u32,
        )
    }
    #[inline]
    fn solve_ul(&self, site: usize, ur: u32, ol: u32) -> u32 {
        let go = self.g[self.cross[site][1]] as usize;
        self.fam.under_inv(go, ur as usize, ol as usize) as u32
    }
    #[inline]
    fn solve_ol(&self, site: usize, ul: u32, or: u32) -> u32 {
        let gu = self.g[self.cross[site][0]] as usize;
        self.fam.over_inv(gu, or as usize, ul as usize) as u32
    }
    #[inline]
    fn vertex_c(&self, site: usize, a: u32, b: u32) -> Option<u32> {
        let ga = self.g[self.verts[site][0]] as usize;
        (a == b).then(|| self.fam.over(ga, a as usize, a as usize) as u32)
    }
    fn vertex_b(&self, site: usize, a: u32, c: u32) -> Option<u32> {
        let ga = self.g[self.verts[site][0]] as usize;
        (self.fam.over(ga, a as usize, a as usize) as u32 == c).then_some(a)
    }
    fn partners(&self, known: u32) -> &[u32] {
        &self.singletons[known as usize..known as usize + 1]
    }
}

/// A node budget shared by all workers.
pub(crate) struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: AtomicU64::new(0) }
    }

    pub fn charge(&self, n: u64) -> Result<()> {
        let total = self.used.fetch_add(n, Ordering::Relaxed) + n;
        if total > self.limit {
            return Err(Error::budget(format!(
                "coloring search exceeded the node budget of {} (raise it with --node-budget)",
                self.limit
            )));
        }
        Ok(())
    }
}

const FLUSH: u64 = 1 << 14;

pub(crate) struct Search<'a, R: Rules> {
    steps: &'a [Step],
    rules: &'a R,
    pub colors: Vec<u32>,
    budget: &'a Budget,
    pending: u64,
}

impl<'a, R: Rules> Search<'a, R> {
    pub fn new(plan: &'a Plan, rules: &'a R, budget: &'a Budget) -> Self {
        Search { steps: &plan.steps, rules, colors: vec![NONE; plan.arcs], budget, pending: 0 }
    }

    #[inline]
    fn tick(&mut self) -> Result<()> {
        self.pending += 1;
        if self.pending >= FLUSH {
            self.flush()?;
        }
        Ok(())
    }

    pub fn flush(&mut self) -> Result<()> {
        let n = std::mem::take(&mut self.pending);
        self.budget.charge(n)
    }

    /// Runs the plan from step `i`, calling `visit` on every completed colouring.
    pub fn run(&mut self, i: usize, visit: &mut dyn FnMut(&[u32]) -> Result<()>) -> Result<()> {
        let rules = self.rules;
        let mut i = i;
        while i < self.steps.len() {
            match self.steps[i] {
                Step::Choose { arc } => {
                    for v in 0..rules.domain() as u32 {
                        self.tick()?;
                        self.colors[arc] = v;
                        self.run(i + 1, visit)?;
                    }
                    return Ok(());
                }
                Step::Partner { arc, known } => {
                    for &v in rules.partners(self.colors[known]) {
                        self.tick()?;
                        self.colors[arc] = v;
                        self.run(i + 1, visit)?;
                    }
                    return Ok(());
                }
                Step::Cross { site, from, arcs, write } => {
                    if !self.cross(site, from, arcs, write) {
                        return Ok(());
                    }
                }
                Step::Vertex { site, from, arcs, write } => {
                    if !self.vertex(site, from, arcs, write) {
                        return Ok(());
                    }
                }
            }
            i += 1;
        }
        visit(&self.colors)
    }

    #[inline]
    fn cross(&mut self, site: usize, from: Pair, arcs: [usize; 4], write: [bool; 4]) -> bool {
        let r = self.rules;
        let c = &self.colors;
        let q = match from {
            Pair::Left => {
                let (ul, ol) = (c[arcs[0]], c[arcs[1]]);
                let (ur, or) = r.fwd(site, ul, ol);
                [ul, ol, ur, or]
            }
            Pair::UnderRight => {
                let (ur, ol) = (c[arcs[2]], c[arcs[1]]);
                let ul = r.solve_ul(site, ur, ol);
                if ul == NONE {
                    return false;
                }
                [ul, ol, ur, r.fwd(site, ul, ol).1]
            }
            Pair::OverRight => {
                let (ul, or) = (c[arcs[0]], c[arcs[3]]);
                let ol = r.solve_ol(site, ul, or);
                if ol == NONE {
                    return false;
                }
                [ul, ol, r.fwd(site, ul, ol).0, or]
            }
            Pair::Right => {
                let (ur, or) = (c[arcs[2]], c[arcs[3]]);
                match r.bwd(site, ur, or) {
                    Some((ul, ol)) => [ul, ol, ur, or],
                    None => return false,
                }
            }
        };
        for k in 0..4 {
            if write[k] {
                self.colors[arcs[k]] = q[k];
            } else if self.colors[arcs[k]] != q[k] {
                return false;
            }
        }
        true
    }

    #[inline]
    fn vertex(&mut self, site: usize, from: VPair, arcs: [usize; 3], write: [bool; 3]) -> bool {
        let r = self.rules;
        let c = &self.colors;
        let q = match from {
            VPair::Ab => match r.vertex_c(site, c[arcs[0]], c[arcs[1]]) {
                Some(v) => [c[arcs[0]], c[arcs[1]], v],
                None => return false,
            },
            VPair::Ac => match r.vertex_b(site, c[arcs[0]], c[arcs[2]]) {
                Some(v) => [c[arcs[0]], v, c[arcs[2]]],
                None => return false,
            },
        };
        for k in 0..3 {
            if write[k] {
                self.colors[arcs[k]] = q[k];
            } else if self.colors[arcs[k]] != q[k] {
                return false;
            }
        }
        true
    }
}

/// Extends an arc colouring to every consistent region colouring.
pub(crate) fn extend_regions(
    plan: &RegionPlan,
    ys: &XSetAction,
    arcs: &[u32],
    regions: &mut [u32],
    i: usize,
    visit: &mut dyn FnMut(&[u32]) -> Result<()>,
) -> Result<()> {
    let mut i = i;
    while i < plan.steps.len() {
        match plan.steps[i] {
            RegionStep::Root { region } => {
                for y in 0..ys.num_points() as u32 {
                    regions[region] = y;
                    extend_regions(plan, ys, arcs, regions, i + 1, visit)?;
                }
                return Ok(());
            }
            RegionStep::Forward { arc, from, to } => {
                regions[to] = ys.act(regions[from] as usize, arcs[arc] as usize) as u32;
            }
            RegionStep::Backward { arc, from, to } => match ys.act_inv(regions[from] as usize, arcs[arc] as usize) {
                Some(y) => regions[to] = y as u32,
                None => return Ok(()),
            },
            RegionStep::Check { arc, source, target } => {
                if ys.act(regions[source] as usize, arcs[arc] as usize) != regions[target] as usize {
                    return Ok(());
                }
            }
        }
        i += 1;
    }
    visit(regions)
}
