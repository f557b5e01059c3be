//! Multiple conjugation biquandles: the [`Mcb`] trait, its tabulated and
//! family-associated implementations, X-sets and axiom verification.

mod assoc;
mod table;
mod verify;
mod xset;

pub use assoc::AssocMcb;
pub use table::{GroupBlock, McbTables, TableMcb};
pub use verify::{verify_mcb, verify_mcb_sampled, verify_xset};
pub use xset::{xset_from_parallel, XSetAction};

use crate::algebra::GFamily;
use crate::error::{Error, Result};

/// A finite multiple conjugation biquandle on the carrier `0..size()`,
/// partitioned into groups `G_λ`, `λ ∈ 0..num_groups()`.
///
/// `mul` and `inv` are only meaningful inside one group; use
/// [`Mcb::checked_mul`] when that is not already known.
pub trait Mcb: Send + Sync {
    fn size(&self) -> usize;
    fn num_groups(&self) -> usize;
    fn group_of(&self, a: usize) -> usize;
    /// Carrier indices of `G_λ`, identity first is not guaranteed.
    fn group_members(&self, lambda: usize) -> &[u32];
    fn identity(&self, lambda: usize) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;
    fn under(&self, a: usize, b: usize) -> usize;
    fn over(&self, a: usize, b: usize) -> usize;
    /// The `x` with `x ⋇̲ b = a`.
    fn under_inv(&self, a: usize, b: usize) -> usize;
    /// The `x` with `x ⋇̄ b = a`.
    fn over_inv(&self, a: usize, b: usize) -> usize;

    /// The underlying family when the carrier is `X × G` indexed `x·|G| + g`.
    fn family(&self) -> Option<&GFamily> {
        None
    }

    /// Human-readable element name.
    fn label(&self, a: usize) -> String {
        a.to_string()
    }

    fn same_group(&self, a: usize, b: usize) -> bool {
        self.group_of(a) == self.group_of(b)
    }

    fn is_identity(&self, a: usize) -> bool {
        self.identity(self.group_of(a)) == a
    }

    fn checked_mul(&self, a: usize, b: usize) -> Result<usize> {
        if !self.same_group(a, b) {
            return Err(Error::structural(format!(
                "cannot multiply {} and {}: they lie in different groups",
                self.label(a),
                self.label(b)
            )));
        }
        Ok(self.mul(a, b))
    }

    /// `a⁻¹ b ⋇̄ a`, the colour of the third leg at a vertex.
    fn vertex_third(&self, a: usize, b: usize) -> usize {
        self.over(self.mul(self.inv(a), b), a)
    }
}
