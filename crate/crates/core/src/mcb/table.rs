use serde::{Deserialize, Serialize};

use super::Mcb;
use crate::algebra::{column_inverse, FinGroup, MAX_TABLE_ENTRIES};
use crate::error::{Error, Result};

/// An MCB stored as explicit tables over its carrier.
#[derive(Clone, Debug)]
pub struct TableMcb {
    n: usize,
    groups: Vec<FinGroup>,
    members: Vec<Vec<u32>>,
    group_of: Vec<u32>,
    local: Vec<u32>,
    under: Vec<u32>,
    over: Vec<u32>,
    under_inv: Option<Vec<u32>>,
    over_inv: Option<Vec<u32>>,
}

/// One group of the partition in serialized form.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupBlock {
    /// Carrier indices; local index `i` of the table is `members[i]`.
    pub members: Vec<usize>,
    /// Local multiplication table.
    pub table: Vec<Vec<usize>>,
}

/// Serialized form: the biquandle tables plus a `groups` partition block.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McbTables {
    pub elements: usize,
    pub groups: Vec<GroupBlock>,
    pub under: Vec<Vec<usize>>,
    pub over: Vec<Vec<usize>>,
}

impl TableMcb {
    /// `members[λ][i]` is the carrier index of local element `i` of `groups[λ]`.
    /// Checks shape and that the groups partition the carrier.
    pub fn new(groups: Vec<FinGroup>, members: Vec<Vec<usize>>, under: Vec<u32>, over: Vec<u32>) -> Result<Self> {
        let n: usize = members.iter().map(Vec::len).sum();
        if n == 0 {
            return Err(Error::structural("empty carrier"));
        }
        if n * n > MAX_TABLE_ENTRIES {
            return Err(Error::budget(format!("carrier {n} needs more than {MAX_TABLE_ENTRIES} table entries")));
        }
        if groups.len() != members.len() {
            return Err(Error::structural("one member list per group required"));
        }
        let mut group_of = vec![u32::MAX; n];
        let mut local = vec![u32::MAX; n];
        for (l, (g, m)) in groups.iter().zip(&members).enumerate() {
            if g.order() != m.len() {
                return Err(Error::structural(format!(
                    "group {l} has order {} but {} members",
                    g.order(),
                    m.len()
                )));
            }
            for (i, &a) in m.iter().enumerate() {
                if a >= n || group_of[a] != u32::MAX {
                    return Err(Error::structural(format!("element {a} is out of range or in two groups")));
                }
                group_of[a] = l as u32;
                local[a] = i as u32;
            }
        }
        for (name, t) in [("under", &under), ("over", &over)] {
            if t.len() != n * n || t.iter().any(|&v| v as usize >= n) {
                return Err(Error::structural(format!("{name} table must be {n}x{n} with entries in range")));
            }
        }
        let under_inv = column_inverse(n, &under);
        let over_inv = column_inverse(n, &over);
        let members = members.into_iter().map(|m| m.into_iter().map(|v| v as u32).collect()).collect();
        Ok(TableMcb { n, groups, members, group_of, local, under, over, under_inv, over_inv })
    }

    pub fn from_tables(t: &McbTables) -> Result<Self> {
        let n = t.elements;
        let mut groups = Vec::new();
        let mut members = Vec::new();
        for b in &t.groups {
            groups.push(FinGroup::from_table(&b.table)?);
            members.push(b.members.clone());
        }
        let flat = |rows: &[Vec<usize>], name: &str| -> Result<Vec<u32>> {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::structural(format!("{name} table must be {n}x{n}")));
            }
            Ok(rows.iter().flatten().map(|&v| v.min(u32::MAX as usize) as u32).collect())
        };
        Self::new(groups, members, flat(&t.under, "under")?, flat(&t.over, "over")?)
    }

    pub fn to_tables(&self) -> McbTables {
        let rows = |t: &[u32]| t.chunks(self.n).map(|r| r.iter().map(|&v| v as usize).collect()).collect();
        McbTables {
            elements: self.n,
            groups: self
                .groups
                .iter()
                .zip(&self.members)
                .map(|(g, m)| GroupBlock { members: m.iter().map(|&v| v as usize).collect(), table: g.table() })
                .collect(),
            under: rows(&self.under),
            over: rows(&self.over),
        }
    }

    /// Materializes any MCB into tables.
    pub fn from_mcb<M: Mcb + ?Sized>(m: &M) -> Result<Self> {
        let n = m.size();
        let mut groups = Vec::new();
        let mut members = Vec::new();
        for l in 0..m.num_groups() {
            let mem: Vec<usize> = m.group_members(l).iter().map(|&v| v as usize).collect();
            let pos = |a: usize| mem.iter().position(|&v| v == a).expect("product stays in the group");
            let table: Vec<Vec<usize>> = mem.iter().map(|&a| mem.iter().map(|&b| pos(m.mul(a, b))).collect()).collect();
            groups.push(FinGroup::from_table(&table)?);
            members.push(mem);
        }
        let mut under = Vec::with_capacity(n * n);
        let mut over = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                under.push(m.under(a, b) as u32);
                over.push(m.over(a, b) as u32);
            }
        }
        Self::new(groups, members, under, over)
    }

    /// The one-group MCB `a ⋇̲ b = b⁻¹ab`, `a ⋇̄ b = a` on a group.
    pub fn conjugation(g: &FinGroup) -> Self {
        let n = g.order();
        let mut under = Vec::with_capacity(n * n);
        let mut over = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                under.push(g.conjugate(a, b) as u32);
                over.push(a as u32);
            }
        }
        Self::new(vec![g.clone()], vec![(0..n).collect()], under, over).expect("conjugation tables are well formed")
    }

    /// The MCB consisting of the single trivial group `{e}`.
    pub fn trivial_group() -> Self {
        Self::conjugation(&FinGroup::trivial())
    }

    /// `k` copies of the trivial group with trivial operations.
    pub fn trivial_groups(k: usize) -> Self {
        let mut under = Vec::with_capacity(k * k);
        for a in 0..k {
            under.extend(std::iter::repeat(a as u32).take(k));
        }
        let groups = vec![FinGroup::trivial(); k];
        let members = (0..k).map(|a| vec![a]).collect();
        Self::new(groups, members, under.clone(), under).expect("well formed")
    }

    /// Replaces one entry of the under table (for negative tests).
    pub fn with_under_entry(mut self, a: usize, b: usize, v: usize) -> Self {
        self.under[a * self.n + b] = v as u32;
        self.under_inv = column_inverse(self.n, &self.under);
        self
    }

    pub fn group(&self, lambda: usize) -> &FinGroup {
        &self.groups[lambda]
    }
}

impl Mcb for TableMcb {
    fn size(&self) -> usize {
        self.n
    }
    fn num_groups(&self) -> usize {
        self.groups.len()
    }
    #[inline]
    fn group_of(&self, a: usize) -> usize {
        self.group_of[a] as usize
    }
    fn group_members(&self, lambda: usize) -> &[u32] {
        &self.members[lambda]
    }
    fn identity(&self, lambda: usize) -> usize {
        self.members[lambda][self.groups[lambda].identity()] as usize
    }
    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        let l = self.group_of(a);
        let g = &self.groups[l];
        self.members[l][g.mul(self.local[a] as usize, self.local[b] as usize)] as usize
    }
    #[inline]
    fn inv(&self, a: usize) -> usize {
        let l = self.group_of(a);
        self.members[l][self.groups[l].inv(self.local[a] as usize)] as usize
    }
    #[inline]
    fn under(&self, a: usize, b: usize) -> usize {
        self.under[a * self.n + b] as usize
    }
    #[inline]
    fn over(&self, a: usize, b: usize) -> usize {
        self.over[a * self.n + b] as usize
    }
    fn under_inv(&self, a: usize, b: usize) -> usize {
        match &self.under_inv {
            Some(t) => t[b * self.n + a] as usize,
            None => (0..self.n).find(|&x| self.under(x, b) == a).unwrap_or(usize::MAX),
        }
    }
    fn over_inv(&self, a: usize, b: usize) -> usize {
        match &self.over_inv {
            Some(t) => t[b * self.n + a] as usize,
            None => (0..self.n).find(|&x| self.over(x, b) == a).unwrap_or(usize::MAX),
        }
    }
}
