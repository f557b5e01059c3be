//! Enumeration of X- and X_Y-colourings by constraint propagation.
//!
//! A colouring assigns an element to every semi-arc such that at each
//! crossing `u_R = u_L ⋇̲ o_L` and `o_R = o_L ⋇̄ u_L` (see
//! [`Crossing::left`](crate::diagram::Crossing::left)), and at each vertex
//! `a`, `b` share a group and `c = a⁻¹b ⋇̄ a`. With an X-set `Y`, regions are
//! coloured too, with `target = source ∗ colour` along every semi-arc.
//!
//! For MCBs associated with a `G`-family the search runs in two layers:
//! first the `G`-coordinates (a colouring by the conjugation MCB of `G`),
//! then the `X`-coordinates given those.

mod engine;
mod plan;

use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::mcb::{Mcb, TableMcb, XSetAction};
use engine::{extend_regions, Budget, FiberRules, McbRules, Rules, Search};
use plan::{build_plan, build_region_plan, site_arcs, Plan, Step};

/// Default cap on search nodes (branch assignments).
pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub node_budget: u64,
    /// Worker threads; results do not depend on it.
    pub jobs: usize,
    /// Use the two-layer search when the MCB comes from a `G`-family.
    pub fibered: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { node_budget: DEFAULT_NODE_BUDGET, jobs: 1, fibered: true }
    }
}

/// An owned colouring: one element per semi-arc, one point per region.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Coloring {
    pub arcs: Vec<u32>,
    pub regions: Option<Vec<u32>>,
}

/// A colouring borrowed from the running search.
#[derive(Clone, Copy, Debug)]
pub struct ColoringRef<'a> {
    pub arcs: &'a [u32],
    pub regions: Option<&'a [u32]>,
}

impl ColoringRef<'_> {
    pub fn to_owned(&self) -> Coloring {
        Coloring { arcs: self.arcs.to_vec(), regions: self.regions.map(<[u32]>::to_vec) }
    }
}

impl Coloring {
    pub fn as_ref(&self) -> ColoringRef<'_> {
        ColoringRef { arcs: &self.arcs, regions: self.regions.as_deref() }
    }
}

/// The first constraint a colouring violates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Crossing(String),
    Vertex(String),
    /// A semi-arc whose two regions are not related by its colour.
    Region(String),
}

/// Runs the search and folds every colouring into an accumulator.
///
/// With `jobs > 1` the first choice is split across workers, each with its
/// own accumulator; the returned accumulators are in a fixed order, so
/// merging them gives results independent of `jobs`.
pub fn fold_colorings<M, A, I, V>(
    d: &Diagram,
    m: &M,
    ys: Option<&XSetAction>,
    opts: &SearchOptions,
    init: I,
    visit: V,
) -> Result<Vec<A>>
where
    M: Mcb,
    A: Send,
    I: Fn() -> A + Sync,
    V: Fn(&mut A, ColoringRef<'_>) -> Result<()> + Sync,
{
    if let Some(ys) = ys {
        if ys.carrier_size() != m.size() {
            return Err(Error::structural(format!(
                "X-set acts on {} elements but the MCB has {}",
                ys.carrier_size(),
                m.size()
            )));
        }
    }
    let plan = build_plan(d, false);
    let rplan = build_region_plan(d);
    let budget = Budget::new(opts.node_budget);
    let leaf = |acc: &mut A, arcs: &[u32]| -> Result<()> {
        match ys {
            None => visit(acc, ColoringRef { arcs, regions: None }),
            Some(ys) => {
                let mut regions = vec![0u32; rplan.regions];
                extend_regions(&rplan, ys, arcs, &mut regions, 0, &mut |r| {
                    visit(acc, ColoringRef { arcs, regions: Some(r) })
                })
            }
        }
    };
    match m.family().filter(|_| opts.fibered) {
        Some(fam) => {
            let conj = TableMcb::conjugation(fam.group());
            let (cross, verts) = site_arcs(d);
            let singletons: Vec<u32> = (0..fam.base_size() as u32).collect();
            let ng = fam.group().order() as u32;
            let fplan = build_plan(d, true);
            let n = plan.arcs;
            let fiber = |acc: &mut A, g: &[u32]| -> Result<()> {
                let rules = FiberRules { fam, g, cross: &cross, verts: &verts, singletons: &singletons };
                let mut s = Search::new(&fplan, &rules, &budget);
                let mut full = vec![0u32; n];
                s.run(0, &mut |x| {
                    for i in 0..n {
                        full[i] = x[i] * ng + g[i];
                    }
                    leaf(acc, &full)
                })?;
                s.flush()
            };
            drive(&plan, &McbRules { m: &conj }, &budget, opts.jobs, &init, &fiber)
        }
        None => drive(&plan, &McbRules { m }, &budget, opts.jobs, &init, &leaf),
    }
}

fn drive<R: Rules, A: Send>(
    plan: &Plan,
    rules: &R,
    budget: &Budget,
    jobs: usize,
    init: &(dyn Fn() -> A + Sync),
    leaf: &(dyn Fn(&mut A, &[u32]) -> Result<()> + Sync),
) -> Result<Vec<A>> {
    let run_from = |first: Option<(usize, u32)>| -> Result<A> {
        let mut acc = init();
        let mut s = Search::new(plan, rules, budget);
        let start = match first {
            Some((arc, v)) => {
                s.colors[arc] = v;
                1
            }
            None => 0,
        };
        s.run(start, &mut |c| leaf(&mut acc, c))?;
        s.flush()?;
        Ok(acc)
    };
    match plan.steps.first() {
        Some(&Step::Choose { arc }) if jobs > 1 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| Error::structural(format!("thread pool: {e}")))?;
            pool.install(|| {
                (0..rules.domain() as u32).into_par_iter().map(|v| run_from(Some((arc, v)))).collect()
            })
        }
        _ => Ok(vec![run_from(None)?]),
    }
}

/// Every colouring, in the deterministic search order.
pub fn enumerate_colorings<M: Mcb>(
    d: &Diagram,
    m: &M,
    ys: Option<&XSetAction>,
    opts: &SearchOptions,
) -> Result<Vec<Coloring>> {
    let parts = fold_colorings(d, m, ys, opts, Vec::new, |acc, c| {
        acc.push(c.to_owned());
        Ok(())
    })?;
    Ok(parts.into_iter().flatten().collect())
}

pub fn count_colorings<M: Mcb>(d: &Diagram, m: &M, ys: Option<&XSetAction>, opts: &SearchOptions) -> Result<u64> {
    let parts = fold_colorings(d, m, ys, opts, || 0u64, |acc, _| {
        *acc += 1;
        Ok(())
    })?;
    Ok(parts.into_iter().sum())
}

/// Checks every crossing, vertex and region constraint.
pub fn verify_coloring<M: Mcb>(
    d: &Diagram,
    m: &M,
    ys: Option<&XSetAction>,
    c: &Coloring,
) -> Result<Option<Violation>> {
    if c.arcs.len() != d.semiarcs().len() || c.arcs.iter().any(|&a| a as usize >= m.size()) {
        return Err(Error::structural("colouring does not match the diagram and MCB"));
    }
    let col = |i: usize| c.arcs[i] as usize;
    for x in d.crossings() {
        let (ul, ol) = x.left();
        let (ur, or) = x.right();
        if m.under(col(ul), col(ol)) != col(ur) || m.over(col(ol), col(ul)) != col(or) {
            return Ok(Some(Violation::Crossing(x.id.clone())));
        }
    }
    for v in d.vertices() {
        let (a, b) = (col(v.a), col(v.b));
        if !m.same_group(a, b) || m.vertex_third(a, b) != col(v.c) {
            return Ok(Some(Violation::Vertex(v.id.clone())));
        }
    }
    match (ys, &c.regions) {
        (None, None) => {}
        (Some(ys), Some(r)) => {
            if r.len() != d.regions().len() || r.iter().any(|&y| y as usize >= ys.num_points()) {
                return Err(Error::structural("region colouring does not match the diagram and X-set"));
            }
            for (i, s) in d.semiarcs().iter().enumerate() {
                if ys.act(r[s.source] as usize, col(i)) != r[s.target] as usize {
                    return Ok(Some(Violation::Region(s.id.clone())));
                }
            }
        }
        _ => return Err(Error::structural("region colours present iff an X-set is given")),
    }
    Ok(None)
}
