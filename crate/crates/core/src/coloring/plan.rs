//! Static search plans: the order in which semi-arc colours are chosen or
//! derived, fixed before the search starts.

use crate::diagram::Diagram;

/// Which two of the four crossing arcs `[u_L, o_L, u_R, o_R]` a colour
/// quadruple is derived from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Pair {
    /// `(u_L, o_L)`: the forward relation.
    Left,
    /// `(u_R, o_L)`: invert `⋇̲ o_L`.
    UnderRight,
    /// `(u_L, o_R)`: invert `⋇̄ u_L`.
    OverRight,
    /// `(u_R, o_R)`: invert `S`.
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum VPair {
    /// Derive `c` from `a` and `b`.
    Ab,
    /// Derive `b` from `a` and `c`.
    Ac,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Step {
    /// Try every element for `arc`.
    Choose { arc: usize },
    /// Try every element of the group of `known`'s colour for `arc`.
    Partner { arc: usize, known: usize },
    /// Derive the quadruple of a crossing; `write[i]` marks slots to
    /// assign, the rest are compared.
    Cross { site: usize, from: Pair, arcs: [usize; 4], write: [bool; 4] },
    Vertex { site: usize, from: VPair, arcs: [usize; 3], write: [bool; 3] },
}

#[derive(Clone, Debug)]
pub(crate) struct Plan {
    pub steps: Vec<Step>,
    pub arcs: usize,
}

/// `[u_L, o_L, u_R, o_R]` of every crossing and `[a, b, c]` of every vertex.
pub(crate) fn site_arcs(d: &Diagram) -> (Vec<[usize; 4]>, Vec<[usize; 3]>) {
    let cross = d
        .crossings()
        .iter()
        .map(|c| {
            let (ul, ol) = c.left();
            let (ur, or) = c.right();
            [ul, ol, ur, or]
        })
        .collect();
    let verts = d.vertices().iter().map(|v| [v.a, v.b, v.c]).collect();
    (cross, verts)
}

#[derive(Clone)]
struct Builder {
    cross: Vec<[usize; 4]>,
    verts: Vec<[usize; 3]>,
    known: Vec<bool>,
    cross_done: Vec<bool>,
    vert_done: Vec<bool>,
    steps: Vec<Step>,
    free_partners: bool,
}

impl Builder {
    /// Emits every forced derivation; returns how many arcs became known.
    fn propagate(&mut self, emit: bool) -> usize {
        let mut gained = 0;
        loop {
            let mut changed = false;
            for s in 0..self.cross.len() {
                if self.cross_done[s] {
                    continue;
                }
                let q = self.cross[s];
                let k: Vec<bool> = q.iter().map(|&a| self.known[a]).collect();
                let from = if k[0] && k[1] {
                    Pair::Left
                } else if k[2] && k[1] {
                    Pair::UnderRight
                } else if k[0] && k[3] {
                    Pair::OverRight
                } else if k[2] && k[3] {
                    Pair::Right
                } else {
                    continue;
                };
                let mut write = [false; 4];
                for i in 0..4 {
                    if !self.known[q[i]] {
                        write[i] = true;
                        self.known[q[i]] = true;
                        gained += 1;
                    }
                }
                self.cross_done[s] = true;
                changed = true;
                if emit {
                    self.steps.push(Step::Cross { site: s, from, arcs: q, write });
                }
            }
            for s in 0..self.verts.len() {
                if self.vert_done[s] {
                    continue;
                }
                let t = self.verts[s];
                let from = if self.known[t[0]] && self.known[t[1]] {
                    VPair::Ab
                } else if self.known[t[0]] && self.known[t[2]] {
                    VPair::Ac
                } else {
                    continue;
                };
                let mut write = [false; 3];
                for i in 0..3 {
                    if !self.known[t[i]] {
                        write[i] = true;
                        self.known[t[i]] = true;
                        gained += 1;
                    }
                }
                self.vert_done[s] = true;
                changed = true;
                if emit {
                    self.steps.push(Step::Vertex { site: s, from, arcs: t, write });
                }
            }
            if !changed && self.free_partners {
                // A vertex partner has exactly one candidate: take it.
                for t in self.verts.clone() {
                    let (arc, known) = match (self.known[t[0]], self.known[t[1]]) {
                        (true, false) => (t[1], t[0]),
                        (false, true) => (t[0], t[1]),
                        _ => continue,
                    };
                    self.known[arc] = true;
                    gained += 1;
                    changed = true;
                    if emit {
                        self.steps.push(Step::Partner { arc, known });
                    }
                    break;
                }
            }
            if !changed {
                return gained;
            }
        }
    }

    /// Arcs that become known if `arc` is assigned now.
    fn gain(&self, arc: usize) -> usize {
        let mut sim = self.clone();
        sim.steps.clear();
        sim.known[arc] = true;
        sim.propagate(false)
    }

    fn done(&self) -> bool {
        self.known.iter().all(|&k| k)
    }

    /// Branching steps available now, most productive first.
    fn candidates(&self) -> Vec<Step> {
        let mut out: Vec<(usize, Step)> = Vec::new();
        for &[a, b, _] in &self.verts {
            let (arc, known) = match (self.known[a], self.known[b]) {
                (true, false) => (b, a),
                (false, true) => (a, b),
                _ => continue,
            };
            out.push((self.gain(arc), Step::Partner { arc, known }));
        }
        for arc in (0..self.known.len()).filter(|&a| !self.known[a]) {
            out.push((self.gain(arc), Step::Choose { arc }));
        }
        out.sort_by_key(|(g, s)| (std::cmp::Reverse(*g), cost(s)));
        out.into_iter().map(|(_, s)| s).collect()
    }

    fn take(&mut self, step: Step) {
        let arc = branch_arc(&step);
        self.known[arc] = true;
        self.steps.push(step);
        self.propagate(true);
    }
}

fn branch_arc(step: &Step) -> usize {
    match *step {
        Step::Choose { arc } | Step::Partner { arc, .. } => arc,
        _ => unreachable!("only branching steps are taken"),
    }
}

/// Relative branching cost: a free choice ranges over all elements, a
/// partner only over one group.
fn cost(step: &Step) -> u32 {
    match step {
        Step::Choose { .. } => 2,
        _ => 1,
    }
}

fn plan_cost(steps: &[Step]) -> u32 {
    steps.iter().filter(|s| matches!(s, Step::Choose { .. } | Step::Partner { .. })).map(cost).sum()
}

/// Plan builders tried by the exact search before the greedy plan stands.
const SEARCH_LIMIT: usize = 200_000;

/// Depth-first search for a cheapest sequence of branching steps. Free
/// choices are taken in increasing arc order, since the closure of a set
/// of chosen arcs does not depend on the order.
fn cheapest(b: &Builder, last_choice: Option<usize>, best: &mut (u32, Builder), left: &mut usize) {
    if b.done() {
        let c = plan_cost(&b.steps);
        if c < best.0 {
            *best = (c, b.clone());
        }
        return;
    }
    if *left == 0 || plan_cost(&b.steps) + 1 >= best.0 {
        return;
    }
    *left -= 1;
    for step in b.candidates() {
        let next_choice = match step {
            Step::Choose { arc } if last_choice.is_some_and(|l| arc < l) => continue,
            Step::Choose { arc } => Some(arc),
            _ => last_choice,
        };
        let mut c = b.clone();
        c.take(step);
        cheapest(&c, next_choice, best, left);
    }
}

/// Plan with the fewest branching steps, weighing a free choice at twice a
/// same-group partner. The greedy plan (most forced arcs first) seeds a
/// bounded exact search. With `free_partners` every group is assumed to be
/// a singleton, so partners are derived rather than branched on.
pub(crate) fn build_plan(d: &Diagram, free_partners: bool) -> Plan {
    let (cross, verts) = site_arcs(d);
    let n = d.semiarcs().len();
    let mut start = Builder {
        cross_done: vec![false; cross.len()],
        vert_done: vec![false; verts.len()],
        cross,
        verts,
        known: vec![false; n],
        steps: Vec::new(),
        free_partners,
    };
    start.propagate(true);
    let mut greedy = start.clone();
    while !greedy.done() {
        let step = greedy.candidates().into_iter().next().expect("an unknown arc exists");
        greedy.take(step);
    }
    let mut best = (plan_cost(&greedy.steps), greedy);
    let mut left = SEARCH_LIMIT;
    cheapest(&start, None, &mut best, &mut left);
    let mut b = best.1;
    // Sites never used for a derivation still need a consistency check.
    for s in 0..b.cross.len() {
        if !b.cross_done[s] {
            b.steps.push(Step::Cross { site: s, from: Pair::Left, arcs: b.cross[s], write: [false; 4] });
        }
    }
    for s in 0..b.verts.len() {
        if !b.vert_done[s] {
            b.steps.push(Step::Vertex { site: s, from: VPair::Ab, arcs: b.verts[s], write: [false; 3] });
        }
    }
    Plan { steps: b.steps, arcs: n }
}

/// Region colouring order: for each connected piece of the region graph a
/// root region, then tree edges, then the remaining edges as checks.
#[derive(Clone, Debug)]
pub(crate) struct RegionPlan {
    pub regions: usize,
    pub steps: Vec<RegionStep>,
}

#[derive(Clone, Copy, Debug)]
pub(crate) enum RegionStep {
    Root { region: usize },
    /// `target = source ∗ colour(arc)`.
    Forward { arc: usize, from: usize, to: usize },
    /// `source = target ∗⁻¹ colour(arc)`.
    Backward { arc: usize, from: usize, to: usize },
    Check { arc: usize, source: usize, target: usize },
}

pub(crate) fn build_region_plan(d: &Diagram) -> RegionPlan {
    let nr = d.regions().len();
    let arcs = d.semiarcs();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nr];
    for (i, s) in arcs.iter().enumerate() {
        adj[s.source].push(i);
        adj[s.target].push(i);
    }
    let mut seen = vec![false; nr];
    let mut tree_arc = vec![false; arcs.len()];
    let mut steps = Vec::new();
    for root in 0..nr {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        steps.push(RegionStep::Root { region: root });
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(r) = queue.pop_front() {
            for &i in &adj[r] {
                let s = &arcs[i];
                let (other, fwd) = if s.source == r { (s.target, true) } else { (s.source, false) };
                if seen[other] {
                    continue;
                }
                seen[other] = true;
                tree_arc[i] = true;
                steps.push(if fwd {
                    RegionStep::Forward { arc: i, from: r, to: other }
                } else {
                    RegionStep::Backward { arc: i, from: r, to: other }
                });
                queue.push_back(other);
            }
        }
    }
    for (i, s) in arcs.iter().enumerate() {
        if !tree_arc[i] {
            steps.push(RegionStep::Check { arc: i, source: s.source, target: s.target });
        }
    }
    RegionPlan { regions: nr, steps }
}
