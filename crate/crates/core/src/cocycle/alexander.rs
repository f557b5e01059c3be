use std::fmt;
use std::str::FromStr;

use super::{Coefficients, Cochain};
use crate::algebra::{AlexanderFamily, ZnModule};
use crate::error::{Error, Result};
use crate::mcb::{AssocMcb, Mcb, XSetAction};

/// Which of the three Alexander-family constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlexanderKind {
    /// `λ(g₁) f(x₁ − x₂, x₂(1 − φ(g₂)g₂⁻¹))` on the one-point X-set.
    One,
    /// `λ(g) f((x − x₁)(1 − φ(g₁)⁻¹g₁), x₁ − x₂, x₂(1 − φ(g₂)g₂⁻¹))` on
    /// `Y = X × G` with `∗ = ⋇̲`.
    Two,
    /// As [`AlexanderKind::Two`] without `λ`, on `Y = X` with
    /// `y ∗ (x, g) = y ⋇̲^g x`.
    TwoPrime,
}

impl AlexanderKind {
    /// Arity of the multilinear map.
    pub fn form_arity(self) -> usize {
        match self {
            AlexanderKind::One => 2,
            AlexanderKind::Two | AlexanderKind::TwoPrime => 3,
        }
    }
}

impl FromStr for AlexanderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(AlexanderKind::One),
            "2" => Ok(AlexanderKind::Two),
            "2p" | "2'" | "2prime" => Ok(AlexanderKind::TwoPrime),
            _ => Err(Error::structural(format!("unknown Alexander cocycle kind {s:?} (use 1, 2 or 2p)"))),
        }
    }
}

impl fmt::Display for AlexanderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlexanderKind::One => "1",
            AlexanderKind::Two => "2",
            AlexanderKind::TwoPrime => "2p",
        })
    }
}

/// A map `f: Xᵏ → A` on a module `X = ℤ_n^d`, tabulated over all tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearForm {
    module: ZnModule,
    arity: usize,
    coefficients: Coefficients,
    values: Vec<i64>,
}

impl MultilinearForm {
    pub fn from_fn(
        module: ZnModule,
        arity: usize,
        coefficients: Coefficients,
        f: impl Fn(&[Vec<u32>]) -> i64,
    ) -> Self {
        let n = module.size();
        let values = (0..n.pow(arity as u32))
            .map(|i| {
                let args: Vec<Vec<u32>> = (0..arity)
                    .map(|k| module.decode(i / n.pow((arity - 1 - k) as u32) % n).coords)
                    .collect();
                coefficients.reduce(f(&args))
            })
            .collect();
        MultilinearForm { module, arity, coefficients, values }
    }

    /// `det(u, v) = u₀v₁ − u₁v₀` on `ℤ_n²`.
    pub fn det(module: ZnModule, coefficients: Coefficients) -> Result<Self> {
        if module.dim != 2 {
            return Err(Error::structural("det needs a module of rank 2"));
        }
        Ok(Self::from_fn(module, 2, coefficients, |v| {
            v[0][0] as i64 * v[1][1] as i64 - v[0][1] as i64 * v[1][0] as i64
        }))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    #[inline]
    pub fn value(&self, xs: &[usize]) -> i64 {
        let n = self.module.size();
        self.values[xs.iter().fold(0, |acc, &x| acc * n + x)]
    }

    /// A failure of additivity in some slot, as `(slot, arguments, u')`:
    /// `f(…, u + u', …) ≠ f(…, u, …) + f(…, u', …)`.
    pub fn multilinearity_witness(&self) -> Option<(usize, Vec<usize>, usize)> {
        let n = self.module.size();
        let a = self.coefficients;
        for slot in 0..self.arity {
            for i in 0..n.pow(self.arity as u32) {
                let args = self.unpack(i);
                for u in 0..n {
                    let mut sum = args.clone();
                    sum[slot] = self.module.add(args[slot], u);
                    let mut other = args.clone();
                    other[slot] = u;
                    if self.value(&sum) != a.add(self.value(&args), self.value(&other)) {
                        return Some((slot, args, u));
                    }
                }
            }
        }
        None
    }

    fn unpack(&self, mut i: usize) -> Vec<usize> {
        let n = self.module.size();
        let mut v = vec![0; self.arity];
        for x in v.iter_mut().rev() {
            *x = i % n;
            i /= n;
        }
        v
    }
}

/// The cocycle `Φ_f` of an Alexander family.
#[derive(Clone, Debug)]
pub struct AlexanderCocycle {
    kind: AlexanderKind,
    family: AlexanderFamily,
    form: MultilinearForm,
    lambda: Vec<i64>,
    coefficients: Coefficients,
    ng: usize,
    /// `x(1 − φ(g)g⁻¹)` at `x·|G| + g`.
    right: Vec<u32>,
    /// `x(1 − φ(g)⁻¹g)` at `x·|G| + g`.
    left: Vec<u32>,
    /// `x₁ − x₂` at `x₁·|X| + x₂`.
    diff: Vec<u32>,
}

impl AlexanderCocycle {
    /// Checks that `f` is multilinear and `G`-invariant and that `λ` is a
    /// homomorphism `G → A` before building `Φ_f`. `λ` is ignored for
    /// [`AlexanderKind::TwoPrime`].
    pub fn new(kind: AlexanderKind, family: AlexanderFamily, form: MultilinearForm, lambda: Vec<i64>) -> Result<Self> {
        let c = Self::new_unchecked(kind, family, form, lambda)?;
        if let Some((slot, args, u)) = c.form.multilinearity_witness() {
            return Err(Error::axiom(format!("f is not additive in slot {slot} at {args:?} with {u}")));
        }
        if let Some((g, args)) = c.invariance_witness() {
            return Err(Error::axiom(format!("f is not G-invariant: g = {g}, arguments {args:?}")));
        }
        if kind != AlexanderKind::TwoPrime {
            if let Some((g, h)) = c.hom_witness() {
                return Err(Error::axiom(format!("λ is not a homomorphism at ({g}, {h})")));
            }
        }
        Ok(c)
    }

    /// Builds `Φ_f` checking only shapes.
    #[doc(hidden)]
    pub fn new_unchecked(
        kind: AlexanderKind,
        family: AlexanderFamily,
        form: MultilinearForm,
        lambda: Vec<i64>,
    ) -> Result<Self> {
        if form.module != family.module {
            return Err(Error::structural("f is defined on a different module"));
        }
        if form.arity != kind.form_arity() {
            return Err(Error::structural(format!("kind {kind} needs a {}-linear map", kind.form_arity())));
        }
        let ng = family.group().order();
        if lambda.len() != ng {
            return Err(Error::structural(format!("λ needs {ng} values, got {}", lambda.len())));
        }
        let coefficients = form.coefficients;
        let lambda = lambda.into_iter().map(|v| coefficients.reduce(v)).collect();
        let nx = family.module.size();
        let mut right = Vec::with_capacity(nx * ng);
        let mut left = Vec::with_capacity(nx * ng);
        for x in 0..nx {
            for g in 0..ng {
                right.push(family.one_minus_phi_ginv(x, g) as u32);
                left.push(family.one_minus_phiinv_g(x, g) as u32);
            }
        }
        let diff = (0..nx * nx).map(|i| family.module.sub(i / nx, i % nx) as u32).collect();
        Ok(AlexanderCocycle { kind, family, form, lambda, coefficients, ng, right, left, diff })
    }

    pub fn kind(&self) -> AlexanderKind {
        self.kind
    }

    pub fn family(&self) -> &AlexanderFamily {
        &self.family
    }

    /// The associated MCB `X × G`.
    pub fn mcb(&self) -> AssocMcb {
        AssocMcb::new(self.family.family.clone())
    }

    /// The X-set the cocycle is defined on.
    pub fn xset(&self) -> XSetAction {
        let m = self.mcb();
        match self.kind {
            AlexanderKind::One => XSetAction::trivial(m.size()),
            AlexanderKind::Two => XSetAction::self_under(&m),
            AlexanderKind::TwoPrime => {
                let fam = &self.family.family;
                XSetAction::from_fn(fam.base_size(), m.size(), |y, a| {
                    let (x, g) = m.split(a);
                    fam.under(g, y, x)
                })
            }
        }
    }

    fn invariance_witness(&self) -> Option<(usize, Vec<usize>)> {
        let n = self.family.module.size();
        let k = self.form.arity;
        for g in 0..self.ng {
            for i in 0..n.pow(k as u32) {
                let args = self.form.unpack(i);
                let moved: Vec<usize> = args.iter().map(|&x| self.family.act(x, g)).collect();
                if self.form.value(&moved) != self.form.value(&args) {
                    return Some((g, args));
                }
            }
        }
        None
    }

    fn hom_witness(&self) -> Option<(usize, usize)> {
        let gr = self.family.group();
        let a = self.coefficients;
        (0..self.ng)
            .flat_map(|g| (0..self.ng).map(move |h| (g, h)))
            .find(|&(g, h)| self.lambda[gr.mul(g, h)] != a.add(self.lambda[g], self.lambda[h]))
    }

    #[inline]
    fn split(&self, a: u32) -> (usize, usize) {
        (a as usize / self.ng, a as usize % self.ng)
    }

    /// `Φ_f(⟨y⟩⟨a⟩⟨b⟩)`.
    #[inline]
    pub fn value(&self, y: u32, a: u32, b: u32) -> i64 {
        let nx = self.family.module.size();
        let ((x1, g1), (x2, g2)) = (self.split(a), self.split(b));
        let d = self.diff[x1 * nx + x2] as usize;
        let r = self.right[x2 * self.ng + g2] as usize;
        match self.kind {
            AlexanderKind::One => self.coefficients.scale(self.lambda[g1], self.form.value(&[d, r])),
            AlexanderKind::Two => {
                let (x, g) = self.split(y);
                let l = self.left[self.diff[x * nx + x1] as usize * self.ng + g1] as usize;
                self.coefficients.scale(self.lambda[g], self.form.value(&[l, d, r]))
            }
            AlexanderKind::TwoPrime => {
                let l = self.left[self.diff[y as usize * nx + x1] as usize * self.ng + g1] as usize;
                self.form.value(&[l, d, r])
            }
        }
    }
}

impl Cochain for AlexanderCocycle {
    fn degree(&self) -> usize {
        2
    }

    fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    fn eval(&self, y: u32, blocks: &[&[u32]]) -> i64 {
        match blocks {
            [[a], [b]] => self.value(y, *a, *b),
            _ => 0,
        }
    }
}
