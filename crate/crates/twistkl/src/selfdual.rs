//! Shared machinery for bar-fixed canonical bases.
//!
//! Both canonical bases in this crate — the one in the algebra and the
//! one in the module on twisted involutions — arise the same way: a
//! standard basis indexed by group elements, a semilinear involution
//! ("bar") that is unitriangular against it, and the unique bar-fixed
//! column per index whose off-diagonal entries have strictly negative
//! v-degrees after normalization. This module houses the completion
//! algorithm and the descending-length elimination used to expand
//! arbitrary elements in the canonical columns.

use std::collections::BTreeMap;

use crate::coxeter::{ElementId, Group};
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;

/// Sparse vector over the standard basis: id → coefficient in Z[v,v⁻¹].
/// Never stores zero coefficients.
pub(crate) type Column = BTreeMap<ElementId, LaurentPoly>;

/// dst += c · src, dropping entries that cancel to zero.
pub(crate) fn add_scaled(dst: &mut Column, src: &Column, c: &LaurentPoly) {
    if c.is_zero() {
        return;
    }
    for (id, p) in src {
        let inc = p.mul(c);
        if inc.is_zero() {
            continue;
        }
        match dst.entry(*id) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign(&inc);
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(inc);
            }
        }
    }
}

/// Complete the canonical column over `w`.
///
/// Normalization: the unit column for `y` is v^(−k·l(y)) times the
/// standard basis element (`k` = 2 in the algebra, 1 in the module).
/// `bar_basis_w` is bar of the standard basis element of `w`, expanded
/// in the standard basis; `lower` holds the finished canonical columns
/// for every index that can appear below `w`, keyed by id.
///
/// Returns the unique bar-fixed `C_w = ñ_w + Σ g_y C_y` whose
/// off-diagonal normalized coefficients have only negative v-exponents.
pub(crate) fn complete_column(
    g: &Group,
    w: ElementId,
    k: i32,
    bar_basis_w: &Column,
    lower: &[Option<Column>],
) -> Result<Column> {
    let lw = g.length(w) as i32;
    // D = bar(ñ_w) − ñ_w.
    let mut d: Column = Column::new();
    for (id, p) in bar_basis_w {
        d.insert(*id, p.shifted(k * lw));
    }
    let unit = LaurentPoly::monomial(1, -k * lw);
    match d.get_mut(&w) {
        Some(p) if *p == unit => {
            d.remove(&w);
        }
        _ => {
            return Err(Error::InternalInvariant(format!(
                "bar is not unitriangular at column {}",
                w.0
            )));
        }
    }
    if d.keys().next_back().is_some_and(|&y| y >= w) {
        return Err(Error::InternalInvariant(format!(
            "bar of column {} is supported above it",
            w.0
        )));
    }

    // C_w, assembled as we eliminate.
    let mut out: Column = Column::new();
    out.insert(w, unit);

    // Eliminate D against lower canonical columns, largest index first.
    while let Some((&y, _)) = d.iter().next_back() {
        let e = d[&y].shifted(k * g.length(y) as i32);
        if e.bar() != e.neg() {
            return Err(Error::AntisymmetryViolated {
                w: w.0,
                y: y.0,
                value: e.to_string(),
            });
        }
        let cy = lower[y.index()]
            .as_ref()
            .ok_or_else(|| Error::InternalInvariant(format!("column {} missing", y.0)))?;
        add_scaled(&mut d, cy, &e.neg());
        debug_assert!(!d.contains_key(&y));
        let gneg = e.negative_part();
        add_scaled(&mut out, cy, &gneg);
    }
    Ok(out)
}

/// Expand `elt` in the canonical columns: `elt = Σ out[z] · C_z`,
/// found by eliminating the largest remaining index.
pub(crate) fn expand_in_columns(
    g: &Group,
    elt: &Column,
    k: i32,
    lower: &[Option<Column>],
) -> Result<BTreeMap<ElementId, LaurentPoly>> {
    let mut d = elt.clone();
    let mut out = BTreeMap::new();
    while let Some((&z, _)) = d.iter().next_back() {
        let c = d[&z].shifted(k * g.length(z) as i32);
        let cz = lower[z.index()]
            .as_ref()
            .ok_or_else(|| Error::InternalInvariant(format!("column {} missing", z.0)))?;
        add_scaled(&mut d, cz, &c.neg());
        debug_assert!(!d.contains_key(&z));
        out.insert(z, c);
    }
    Ok(out)
}
