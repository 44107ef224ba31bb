//! The Hecke algebra of a Coxeter group over Z[u,u⁻¹], u = v², in the
//! normalization T_s² = u²·T_1 + (u²−1)·T_s.
//!
//! [`HeckeElt`] is a sparse combination of standard basis elements
//! T_w. [`Hecke`] owns the memoized machinery: standard-basis
//! inverses, the bar involution (T_w ↦ T_{w⁻¹}⁻¹, v ↦ v⁻¹), the
//! canonical bar-fixed basis c_w with its polynomials P_{y,w} and
//! their top coefficients μ, and the structure constants h_{x,y,z} of
//! c_x·c_y together with the twisted triple constants h̃.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::coxeter::{ElementId, Group, Side};
use crate::error::{Error, Result};
use crate::poly::{IntPoly, LaurentPoly};
use crate::selfdual::{add_scaled, complete_column, expand_in_columns, Column};

/// Element of the algebra: a finite combination Σ p_w(v)·T_w with
/// even v-exponents (the coefficient ring is Z[u,u⁻¹], u = v²).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HeckeElt {
    terms: Column,
}

impl HeckeElt {
    pub fn zero() -> HeckeElt {
        HeckeElt::default()
    }

    /// T_1, the unit.
    pub fn unit() -> HeckeElt {
        HeckeElt::basis(ElementId(0))
    }

    /// T_w.
    pub fn basis(w: ElementId) -> HeckeElt {
        let mut terms = Column::new();
        terms.insert(w, LaurentPoly::one());
        HeckeElt { terms }
    }

    pub(crate) fn from_column(terms: Column) -> HeckeElt {
        HeckeElt { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of T_w.
    pub fn coeff(&self, w: ElementId) -> LaurentPoly {
        self.terms.get(&w).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (ElementId, &LaurentPoly)> {
        self.terms.iter().map(|(w, p)| (*w, p))
    }

    pub(crate) fn column(&self) -> &Column {
        &self.terms
    }

    pub fn support(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.terms.keys().copied()
    }

    pub fn add(&self, other: &HeckeElt) -> HeckeElt {
        let mut out = self.terms.clone();
        add_scaled(&mut out, &other.terms, &LaurentPoly::one());
        HeckeElt { terms: out }
    }

    pub fn sub(&self, other: &HeckeElt) -> HeckeElt {
        let mut out = self.terms.clone();
        add_scaled(&mut out, &other.terms, &LaurentPoly::monomial(-1, 0));
        HeckeElt { terms: out }
    }

    pub fn scale(&self, c: &LaurentPoly) -> HeckeElt {
        let mut out = Column::new();
        add_scaled(&mut out, &self.terms, c);
        HeckeElt { terms: out }
    }

    /// T_s·h (left) or h·T_s (right), by the quadratic relation.
    pub fn t_mult_gen(&self, g: &Group, s: usize, side: Side) -> HeckeElt {
        let u2 = LaurentPoly::monomial(1, 4);
        let u2m1 = LaurentPoly::from_terms([(4, 1), (0, -1)]);
        let mut out = Column::new();
        for (&w, p) in &self.terms {
            let ws = g.mult_gen(s, w, side);
            if g.length(ws) > g.length(w) {
                add_one(&mut out, ws, p.clone());
            } else {
                add_one(&mut out, ws, p.mul(&u2));
                add_one(&mut out, w, p.mul(&u2m1));
            }
        }
        HeckeElt { terms: out }
    }

    /// T_w·h, along a reduced word of w.
    pub fn t_mult_word(&self, g: &Group, w: ElementId) -> HeckeElt {
        let mut cur = self.clone();
        for &s in g.word(w).iter().rev() {
            cur = cur.t_mult_gen(g, s, Side::Left);
        }
        cur
    }

    /// Full product, expanding the left factor in the standard basis.
    pub fn mult(&self, g: &Group, other: &HeckeElt) -> HeckeElt {
        let mut out = Column::new();
        for (&w, p) in &self.terms {
            let tw_other = other.t_mult_word(g, w);
            add_scaled(&mut out, &tw_other.terms, p);
        }
        HeckeElt { terms: out }
    }
}

fn add_one(dst: &mut Column, w: ElementId, p: LaurentPoly) {
    if p.is_zero() {
        return;
    }
    match dst.entry(w) {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            e.get_mut().add_assign(&p);
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(p);
        }
    }
}

/// Memoized canonical-basis engine over a fixed group.
pub struct Hecke<'g> {
    g: &'g Group,
    /// T_w⁻¹ in the standard basis, filled on demand.
    t_inv: Vec<Option<Column>>,
    /// Canonical columns: coefficient of T_y in c_w.
    columns: Vec<Option<Column>>,
    /// All columns for lengths ≤ done_len are present.
    done_len: i64,
    /// Structure-constant rows per fixed right factor.
    h_rows: HashMap<ElementId, Vec<BTreeMap<ElementId, LaurentPoly>>>,
}

/// Solve levels in parallel once they hold this many columns.
const PAR_THRESHOLD: usize = 32;

impl<'g> Hecke<'g> {
    pub fn new(g: &'g Group) -> Hecke<'g> {
        let n = g.num_elements();
        Hecke {
            g,
            t_inv: vec![None; n],
            columns: vec![None; n],
            done_len: -1,
            h_rows: HashMap::new(),
        }
    }

    pub fn group(&self) -> &'g Group {
        self.g
    }

    /// T_w⁻¹ in the standard basis.
    pub fn t_inverse(&mut self, w: ElementId) -> HeckeElt {
        self.ensure_t_inv(w);
        HeckeElt { terms: self.t_inv[w.index()].clone().unwrap() }
    }

    fn ensure_t_inv(&mut self, w: ElementId) {
        if self.t_inv[w.index()].is_some() {
            return;
        }
        let g = self.g;
        // Descend to the deepest memoized prefix, then build back up:
        // T_w = T_s·T_{sw} gives T_w⁻¹ = T_{sw}⁻¹·T_s⁻¹.
        let mut chain = Vec::new();
        let mut cur = w;
        while self.t_inv[cur.index()].is_none() {
            match g.smallest_descent(cur, Side::Left) {
                None => {
                    let mut unit = Column::new();
                    unit.insert(cur, LaurentPoly::one());
                    self.t_inv[cur.index()] = Some(unit);
                    break;
                }
                Some(s) => {
                    chain.push((cur, s));
                    cur = g.mult_gen(s, cur, Side::Left);
                }
            }
        }
        // h·T_s⁻¹ = u⁻²·(h·T_s) + (u⁻²−1)·h.
        let um2 = LaurentPoly::monomial(1, -4);
        let um2m1 = LaurentPoly::from_terms([(-4, 1), (0, -1)]);
        for (target, s) in chain.into_iter().rev() {
            let sw = g.mult_gen(s, target, Side::Left);
            let base = HeckeElt { terms: self.t_inv[sw.index()].clone().unwrap() };
            let hs = base.t_mult_gen(g, s, Side::Right);
            let val = hs.scale(&um2).add(&base.scale(&um2m1));
            self.t_inv[target.index()] = Some(val.terms);
        }
    }

    /// The bar involution: v ↦ v⁻¹ on coefficients, T_w ↦ T_{w⁻¹}⁻¹.
    pub fn bar(&mut self, h: &HeckeElt) -> HeckeElt {
        let mut out = Column::new();
        let ws: Vec<(ElementId, LaurentPoly)> =
            h.terms.iter().map(|(w, p)| (*w, p.bar())).collect();
        for (w, pbar) in ws {
            let wi = self.g.inverse(w);
            self.ensure_t_inv(wi);
            add_scaled(&mut out, self.t_inv[wi.index()].as_ref().unwrap(), &pbar);
        }
        HeckeElt { terms: out }
    }

    /// Compute every canonical column of length ≤ l (clamped to the
    /// enumerated region).
    pub fn ensure_columns_up_to(&mut self, l: u32) -> Result<()> {
        let g = self.g;
        let lmax = l.min(g.max_enumerated_length()) as i64;
        while self.done_len < lmax {
            let level = (self.done_len + 1) as u32;
            let targets: Vec<ElementId> = g.elements_of_length(level).collect();
            for &w in &targets {
                self.ensure_t_inv(g.inverse(w));
            }
            let solve = |&w: &ElementId| -> Result<(ElementId, Column)> {
                let bar_w = self.t_inv[g.inverse(w).index()].as_ref().unwrap();
                Ok((w, complete_column(g, w, 2, bar_w, &self.columns)?))
            };
            let solved: Vec<(ElementId, Column)> = if targets.len() >= PAR_THRESHOLD {
                targets.par_iter().map(solve).collect::<Result<_>>()?
            } else {
                targets.iter().map(solve).collect::<Result<_>>()?
            };
            for (w, col) in solved {
                self.columns[w.index()] = Some(col);
            }
            self.done_len = level as i64;
        }
        Ok(())
    }

    /// The canonical basis element c_w = Σ_y v^(−2·l(w))·P_{y,w}(v⁴)·T_y.
    pub fn c_basis(&mut self, w: ElementId) -> Result<HeckeElt> {
        self.ensure_columns_up_to(self.g.length(w))?;
        Ok(HeckeElt { terms: self.columns[w.index()].clone().unwrap() })
    }

    /// P_{y,w} as a polynomial in q = u² = v⁴; zero unless y ≤ w.
    pub fn kl_polynomial(&mut self, y: ElementId, w: ElementId) -> Result<IntPoly> {
        if !self.g.bruhat_leq(y, w) {
            return Ok(IntPoly::zero());
        }
        self.ensure_columns_up_to(self.g.length(w))?;
        let col = self.columns[w.index()].as_ref().unwrap();
        let p = match col.get(&y) {
            None => return Ok(IntPoly::zero()),
            Some(p) => p.to_int_poly_scaled(-2 * self.g.length(w) as i32, 4)?,
        };
        // Degree bound: deg_q ≤ (l(w) − l(y) − 1)/2 off the diagonal.
        if y == w {
            if !p.is_one() {
                return Err(Error::InternalInvariant(format!(
                    "diagonal polynomial at {} is {p}, not 1",
                    w.0
                )));
            }
        } else if let Some(d) = p.degree() {
            let bound = (self.g.length(w) - self.g.length(y) - 1) / 2;
            if d as u32 > bound {
                return Err(Error::InternalInvariant(format!(
                    "degree bound violated at ({}, {}): {p}",
                    y.0, w.0
                )));
            }
        }
        Ok(p)
    }

    /// Top-degree coefficient: the coefficient of q^((l(w)−l(y)−1)/2),
    /// zero when that exponent is not an integer or y ≰ w.
    pub fn mu(&mut self, y: ElementId, w: ElementId) -> Result<BigInt> {
        let d = self.g.length(w) as i64 - self.g.length(y) as i64 - 1;
        if d < 0 || d % 2 != 0 {
            return Ok(BigInt::zero());
        }
        Ok(self.kl_polynomial(y, w)?.coeff(d / 2))
    }

    /// Rows of structure constants for a fixed right factor: the entry
    /// `rows[x][z]` is h_{x,y,z}, with c_x·c_y = Σ_z h_{x,y,z}·c_z.
    /// Requires the whole finite group. Every h is checked to lie in
    /// ℕ[u,u⁻¹].
    pub fn h_rows_for(&mut self, y: ElementId) -> Result<&Vec<BTreeMap<ElementId, LaurentPoly>>> {
        if !self.h_rows.contains_key(&y) {
            let rows = self.compute_h_rows(y)?;
            self.h_rows.insert(y, rows);
        }
        Ok(self.h_rows.get(&y).unwrap())
    }

    fn compute_h_rows(&mut self, y: ElementId) -> Result<Vec<BTreeMap<ElementId, LaurentPoly>>> {
        let g = self.g;
        if !g.is_whole_group() {
            return Err(Error::FiniteGroupRequired);
        }
        self.ensure_columns_up_to(g.max_enumerated_length())?;
        let n = g.num_elements();
        // t_cy[w] = T_w·c_y, built along discovery order.
        let mut t_cy: Vec<HeckeElt> = Vec::with_capacity(n);
        t_cy.push(HeckeElt { terms: self.columns[y.index()].clone().unwrap() });
        for id in 1..n {
            let w = ElementId(id as u32);
            let s = g.smallest_descent(w, Side::Left).unwrap();
            let sw = g.mult_gen(s, w, Side::Left);
            t_cy.push(t_cy[sw.index()].t_mult_gen(g, s, Side::Left));
        }
        let mut rows = Vec::with_capacity(n);
        for x in 0..n {
            let cx = self.columns[x].as_ref().unwrap();
            let mut prod = Column::new();
            for (xp, p) in cx {
                add_scaled(&mut prod, &t_cy[xp.index()].terms, p);
            }
            let row = expand_in_columns(g, &prod, 2, &self.columns)?;
            for (z, h) in &row {
                if !h.is_nonneg() || !h.is_even() {
                    return Err(Error::PositivityViolated(format!(
                        "h[{}, {}, {}] = {h} is not in N[u, u^-1]",
                        ElementId(x as u32).0,
                        y.0,
                        z.0
                    )));
                }
            }
            rows.push(row);
        }
        Ok(rows)
    }

    /// The structure constants h_{x,y,z} of c_x·c_y, keyed by z.
    pub fn h_const(&mut self, x: ElementId, y: ElementId) -> Result<BTreeMap<ElementId, LaurentPoly>> {
        Ok(self.h_rows_for(y)?[x.index()].clone())
    }

    /// Triple constant: the coefficient of c_{w′} in c_z·c_w·c_{(z*)⁻¹}.
    pub fn h_tilde(&mut self, z: ElementId, w: ElementId, wp: ElementId) -> Result<LaurentPoly> {
        let zsi = self.g.star_inverse(z);
        let first = self.h_rows_for(w)?[z.index()].clone();
        let rows2 = self.h_rows_for(zsi)?;
        let mut out = LaurentPoly::zero();
        for (zp, h1) in &first {
            if let Some(h2) = rows2[zp.index()].get(&wp) {
                out.add_assign(&h1.mul(h2));
            }
        }
        Ok(out)
    }

    /// All triple constants for fixed (z, w): the map w′ ↦ coefficient
    /// of c_{w′} in c_z·c_w·c_{(z*)⁻¹}.
    pub fn h_tilde_row(
        &mut self,
        z: ElementId,
        w: ElementId,
    ) -> Result<BTreeMap<ElementId, LaurentPoly>> {
        let zsi = self.g.star_inverse(z);
        let first = self.h_rows_for(w)?[z.index()].clone();
        let rows2 = self.h_rows_for(zsi)?;
        let mut out: BTreeMap<ElementId, LaurentPoly> = BTreeMap::new();
        for (zp, h1) in &first {
            for (wp, h2) in &rows2[zp.index()] {
                let e = out.entry(*wp).or_insert_with(LaurentPoly::zero);
                e.add_assign(&h1.mul(h2));
            }
        }
        out.retain(|_, p| !p.is_zero());
        Ok(out)
    }

    /// Same triple constant from the other association order.
    pub fn h_tilde_alt(&mut self, z: ElementId, w: ElementId, wp: ElementId) -> Result<LaurentPoly> {
        let zsi = self.g.star_inverse(z);
        let first = self.h_rows_for(zsi)?[w.index()].clone();
        let mut out = LaurentPoly::zero();
        for (zp, h1) in &first {
            let h2 = self.h_rows_for(*zp)?[z.index()].get(&wp).cloned();
            if let Some(h2) = h2 {
                out.add_assign(&h1.mul(&h2));
            }
        }
        Ok(out)
    }
}
