//! Loading inputs that may be given either as a file or as a built-in name.
//!
//! An argument is read as a file when it ends in `.json` or names an
//! existing path; otherwise it is looked up in [`crate::registry`].

use std::path::Path;

use serde_json::Value;

use crate::algebra::{BiquandleTables, FinBiquandle, GFamily};
use crate::cocycle::{BQCocycle, Cochain, TableCochain};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::mcb::{AssocMcb, Mcb, McbTables, TableMcb, XSetAction};
use crate::registry::{self, AnyMcb};

fn is_path(spec: &str) -> bool {
    spec.ends_with(".json") || Path::new(spec).is_file()
}

pub fn read_text(path: impl AsRef<Path>) -> Result<String> {
    let path = path.as_ref();
    std::fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

pub fn load_diagram(path: impl AsRef<Path>) -> Result<Diagram> {
    Ok(Diagram::parse(&read_text(path)?)?)
}

/// An MCB file holds [`McbTables`]; a bare biquandle file
/// (`elements`, `under`, `over`) gives the MCB of its parallel operations.
pub fn load_mcb(spec: &str) -> Result<AnyMcb> {
    if !is_path(spec) {
        return registry::mcb(spec);
    }
    let v: Value = serde_json::from_str(&read_text(spec)?)?;
    if v.get("groups").is_some() {
        let t: McbTables = serde_json::from_value(v)?;
        Ok(AnyMcb::Table(TableMcb::from_tables(&t)?))
    } else {
        let t: BiquandleTables = serde_json::from_value(v)?;
        let x = FinBiquandle::from_tables(&t)?;
        Ok(AnyMcb::Assoc(AssocMcb::new(GFamily::from_parallel(&x)?)))
    }
}

pub fn load_biquandle(spec: &str) -> Result<FinBiquandle> {
    if !is_path(spec) {
        return registry::biquandle(spec);
    }
    let t: BiquandleTables = serde_json::from_str(&read_text(spec)?)?;
    FinBiquandle::from_tables(&t)
}

/// A file holds the action table `[[y ∗ a for a] for y]`.
pub fn load_xset<M: Mcb + ?Sized>(spec: &str, m: &M) -> Result<XSetAction> {
    if !is_path(spec) {
        return registry::xset(spec, m);
    }
    let t: Vec<Vec<usize>> = serde_json::from_str(&read_text(spec)?)?;
    XSetAction::from_table(m.size(), &t)
}

/// A file holds a [`TableCochain`]; its carrier and point counts must
/// match `m` and `ys`.
pub fn load_cochain<M: Mcb + ?Sized>(spec: &str, m: &M, ys: &XSetAction) -> Result<Box<dyn Cochain>> {
    if !is_path(spec) {
        return registry::cochain(spec, m, ys);
    }
    let c = TableCochain::from_json(&read_text(spec)?)?;
    if c.carrier() != m.size() || c.points() != ys.num_points() {
        return Err(Error::Structural(format!(
            "cochain is over {} elements and {} points, the algebra has {} and the X-set {}",
            c.carrier(),
            c.points(),
            m.size(),
            ys.num_points()
        )));
    }
    Ok(Box::new(c))
}

pub fn load_bq_cocycle(path: impl AsRef<Path>) -> Result<BQCocycle> {
    BQCocycle::from_json(&read_text(path)?)
}
