use super::Mcb;
use crate::algebra::GFamily;

/// The MCB on `X × G = ⨆_x {x} × G` associated with a `G`-family:
/// `(x,g) ⋇̲ (y,h) = (x ⋇̲^h y, h⁻¹gh)`, `(x,g) ⋇̄ (y,h) = (x ⋇̄^h y, g)`.
///
/// Element `(x, g)` has index `x·|G| + g`; its group is `x`.
#[derive(Clone, Debug)]
pub struct AssocMcb {
    fam: GFamily,
    ng: usize,
    members: Vec<Vec<u32>>,
    /// `conj[g·|G| + h] = h⁻¹gh`.
    conj: Vec<u32>,
}

impl AssocMcb {
    pub fn new(fam: GFamily) -> Self {
        let ng = fam.group().order();
        let nx = fam.base_size();
        let members = (0..nx).map(|x| (0..ng).map(|g| (x * ng + g) as u32).collect()).collect();
        let gr = fam.group();
        let conj = (0..ng * ng).map(|i| gr.conjugate(i / ng, i % ng) as u32).collect();
        AssocMcb { fam, ng, members, conj }
    }

    pub fn gfamily(&self) -> &GFamily {
        &self.fam
    }

    #[inline]
    pub fn split(&self, a: usize) -> (usize, usize) {
        (a / self.ng, a % self.ng)
    }

    #[inline]
    pub fn join(&self, x: usize, g: usize) -> usize {
        x * self.ng + g
    }
}

impl Mcb for AssocMcb {
    fn size(&self) -> usize {
        self.fam.base_size() * self.ng
    }
    fn num_groups(&self) -> usize {
        self.fam.base_size()
    }
    #[inline]
    fn group_of(&self, a: usize) -> usize {
        a / self.ng
    }
    fn group_members(&self, lambda: usize) -> &[u32] {
        &self.members[lambda]
    }
    fn identity(&self, lambda: usize) -> usize {
        self.join(lambda, self.fam.group().identity())
    }
    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        let (x, g) = self.split(a);
        self.join(x, self.fam.group().mul(g, b % self.ng))
    }
    #[inline]
    fn inv(&self, a: usize) -> usize {
        let (x, g) = self.split(a);
        self.join(x, self.fam.group().inv(g))
    }
    #[inline]
    fn under(&self, a: usize, b: usize) -> usize {
        let (x, g) = self.split(a);
        let (y, h) = self.split(b);
        self.join(self.fam.under(h, x, y), self.conj[g * self.ng + h] as usize)
    }
    #[inline]
    fn over(&self, a: usize, b: usize) -> usize {
        let (x, g) = self.split(a);
        let (y, h) = self.split(b);
        self.join(self.fam.over(h, x, y), g)
    }
    fn under_inv(&self, a: usize, b: usize) -> usize {
        let (ax, ag) = self.split(a);
        let (y, h) = self.split(b);
        let gr = self.fam.group();
        let g = gr.mul(gr.mul(h, ag), gr.inv(h));
        self.join(self.fam.under_inv(h, ax, y), g)
    }
    fn over_inv(&self, a: usize, b: usize) -> usize {
        let (ax, ag) = self.split(a);
        let (y, h) = self.split(b);
        self.join(self.fam.over_inv(h, ax, y), ag)
    }
    fn family(&self) -> Option<&GFamily> {
        Some(&self.fam)
    }
    fn label(&self, a: usize) -> String {
        let (x, g) = self.split(a);
        format!("({x},{g})")
    }
}
