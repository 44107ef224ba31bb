//! The Hecke-algebra module spanned by twisted involutions.
//!
//! For a group with diagram involution `*`, the free module over
//! `Z[v,v⁻¹]` with basis `a_x` indexed by twisted involutions carries a
//! Hecke action given case by case through the one- and two-letter
//! moves. This module implements that action, the semilinear bar
//! operator it forces, the self-dual basis `A_w` with its table of
//! polynomials `P^σ` in `u = v²`, the leading coefficients `μ′`/`μ″`
//! and the derived integers `M^s`, the structure constants `b` of the
//! canonical-basis action, and positivity checks pairing all of this
//! against the classical Kazhdan–Lusztig data.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::coxeter::{CaseClass, ElementId, Group, Side, INFINITY};
use crate::hecke::{Hecke, HeckeElt};
use crate::poly::half_combine_laurent;
use crate::selfdual::{add_scaled, complete_column, expand_in_columns, Column};
use crate::{Error, IntPoly, LaurentPoly, Result};

/// Element of the module: a finite `Z[v,v⁻¹]`-combination of basis
/// vectors `a_x` over twisted involutions. No zero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MElt {
    terms: Column,
}

impl MElt {
    pub fn zero() -> MElt {
        MElt::default()
    }

    /// The basis element a_x; errors unless x is a twisted involution.
    pub fn basis(g: &Group, x: ElementId) -> Result<MElt> {
        if !g.is_twisted_involution(x) {
            return Err(Error::NotTwistedInvolution(x.0));
        }
        let mut terms = Column::new();
        terms.insert(x, LaurentPoly::one());
        Ok(MElt { terms })
    }

    pub(crate) fn from_column(terms: Column) -> MElt {
        MElt { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of a_x.
    pub fn coeff(&self, x: ElementId) -> LaurentPoly {
        self.terms.get(&x).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (ElementId, &LaurentPoly)> {
        self.terms.iter().map(|(x, p)| (*x, p))
    }

    pub(crate) fn column(&self) -> &Column {
        &self.terms
    }

    pub fn support(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.terms.keys().copied()
    }

    pub fn add(&self, other: &MElt) -> MElt {
        let mut terms = self.terms.clone();
        add_scaled(&mut terms, &other.terms, &LaurentPoly::one());
        MElt { terms }
    }

    pub fn sub(&self, other: &MElt) -> MElt {
        let mut terms = self.terms.clone();
        add_scaled(&mut terms, &other.terms, &LaurentPoly::monomial(-1, 0));
        MElt { terms }
    }

    pub fn scale(&self, c: &LaurentPoly) -> MElt {
        if c.is_zero() {
            return MElt::zero();
        }
        let terms = self.terms.iter().map(|(x, p)| (*x, p.mul(c))).collect();
        MElt { terms }
    }
}

/// Per-group report of a module positivity sweep.
#[derive(Debug, Clone, Default)]
pub struct ModulePositivityReport {
    /// Number of (z, w, w′) triples whose half-sums were checked.
    pub triples_checked: usize,
    /// Triples whose structure constant b had an odd v-exponent; these
    /// are legitimate values (the A1 action already produces v+v⁻¹) and
    /// are surfaced for inspection, not failed.
    pub odd_b: Vec<(u32, u32, u32)>,
}

const PAR_THRESHOLD: usize = 32;

/// Engine for the module on twisted involutions: caches the bar
/// expansions bar(a_w), the self-dual columns A_w (whose entries are the
/// polynomials P^σ), and wraps a Hecke engine for the classical side.
pub struct SigmaTable<'g> {
    g: &'g Group,
    hecke: Hecke<'g>,
    bar_cache: Vec<Option<Column>>,
    columns: Vec<Option<Column>>,
    done_len: i64,
}

impl<'g> SigmaTable<'g> {
    pub fn new(g: &'g Group) -> SigmaTable<'g> {
        let n = g.num_elements();
        SigmaTable {
            g,
            hecke: Hecke::new(g),
            bar_cache: vec![None; n],
            columns: vec![None; n],
            done_len: -1,
        }
    }

    pub fn group(&self) -> &'g Group {
        self.g
    }

    /// The wrapped classical engine (canonical basis, P, μ, h).
    pub fn hecke(&mut self) -> &mut Hecke<'g> {
        &mut self.hecke
    }

    /// Longest basis length whose column is computable: everything for
    /// a whole group; one short of the enumerated edge otherwise, so
    /// the two-letter moves used along the way stay in range.
    fn safe_length(&self) -> u32 {
        if self.g.is_whole_group() {
            self.g.max_enumerated_length()
        } else {
            self.g.max_enumerated_length().saturating_sub(1)
        }
    }

    /// (T_s + 1)·m, by the four-case table: on a_z the result is
    /// c·(a_z + a_z̃) with c = u+1, u²−u, 1, u² in the ascent-commute,
    /// descent-commute, ascent-skew, descent-skew cases respectively.
    pub fn act_ts1(&self, s: usize, m: &MElt) -> MElt {
        let g = self.g;
        let asc_com = LaurentPoly::from_terms([(2, 1), (0, 1)]); // u + 1
        let des_com = LaurentPoly::from_terms([(4, 1), (2, -1)]); // u² − u
        let des_skew = LaurentPoly::monomial(1, 4); // u²
        let mut out = Column::new();
        for (z, p) in &m.terms {
            let case = g
                .classify_case(s, *z)
                .expect("module elements are supported on twisted involutions");
            let tz = g.tilde(s, *z).expect("the move stays in the enumerated region");
            let c = match case {
                CaseClass::AscentCommute => p.mul(&asc_com),
                CaseClass::DescentCommute => p.mul(&des_com),
                CaseClass::AscentSkew => p.clone(),
                CaseClass::DescentSkew => p.mul(&des_skew),
            };
            for id in [*z, tz] {
                let e = out.entry(id).or_insert_with(LaurentPoly::zero);
                e.add_assign(&c);
                if e.is_zero() {
                    out.remove(&id);
                }
            }
        }
        MElt { terms: out }
    }

    /// T_s·m = (T_s + 1)·m − m.
    fn apply_t(&self, s: usize, m: &MElt) -> MElt {
        self.act_ts1(s, m).sub(m)
    }

    /// h·m for a Hecke element h, expanding each T_w along a reduced
    /// word; scalars act through u = v².
    pub fn act_hecke(&self, h: &HeckeElt, m: &MElt) -> MElt {
        let mut out = Column::new();
        for (x, p) in h.terms() {
            let mut cur = m.clone();
            for &s in self.g.word(x).iter().rev() {
                cur = self.apply_t(s, &cur);
            }
            add_scaled(&mut out, &cur.terms, p);
        }
        MElt { terms: out }
    }

    /// bar(a_w), expanded in the a-basis.
    pub fn bar_basis(&mut self, w: ElementId) -> Result<MElt> {
        self.ensure_bar(w)?;
        Ok(MElt {
            terms: self.bar_cache[w.index()].clone().unwrap(),
        })
    }

    /// Semilinear extension: bar(Σ p_y a_y) = Σ bar(p_y)·bar(a_y).
    pub fn bar(&mut self, m: &MElt) -> Result<MElt> {
        let parts: Vec<(ElementId, LaurentPoly)> =
            m.terms.iter().map(|(y, p)| (*y, p.bar())).collect();
        let mut out = Column::new();
        for (y, pbar) in parts {
            self.ensure_bar(y)?;
            add_scaled(&mut out, self.bar_cache[y.index()].as_ref().unwrap(), &pbar);
        }
        Ok(MElt { terms: out })
    }

    fn ensure_bar(&mut self, w: ElementId) -> Result<()> {
        if self.bar_cache[w.index()].is_some() {
            return Ok(());
        }
        let g = self.g;
        if !g.is_twisted_involution(w) {
            return Err(Error::NotTwistedInvolution(w.0));
        }
        if g.length(w) > self.safe_length() {
            return Err(Error::PreconditionViolated(format!(
                "element {} is too close to the enumerated edge; rebuild with a larger bound",
                w.0
            )));
        }
        // Walk down to a cached ancestor, then rebuild on the way up.
        let mut chain: Vec<(ElementId, usize, bool, ElementId)> = Vec::new();
        let mut cur = w;
        while self.bar_cache[cur.index()].is_none() {
            if cur == g.identity() {
                let mut c = Column::new();
                c.insert(cur, LaurentPoly::one());
                self.bar_cache[cur.index()] = Some(c);
                break;
            }
            let s = g.smallest_descent(cur, Side::Left).unwrap();
            let sz = g.mult_gen(s, cur, Side::Left);
            let commute = sz == g.mult_gen(g.star_gen(s), cur, Side::Right);
            let parent = if commute {
                sz
            } else {
                g.mult_gen(g.star_gen(s), sz, Side::Right)
            };
            chain.push((cur, s, commute, parent));
            cur = parent;
        }
        while let Some((target, s, commute, parent)) = chain.pop() {
            let pb = MElt {
                terms: self.bar_cache[parent.index()].clone().unwrap(),
            };
            let val = self.bar_step(s, commute, &pb)?;
            let lw = g.length(target) as i32;
            if val.coeff(target) != LaurentPoly::monomial(1, -2 * lw) {
                return Err(Error::InternalInvariant(format!(
                    "bar(a_{}) has diagonal {} instead of v^{}",
                    target.0,
                    val.coeff(target),
                    -2 * lw
                )));
            }
            self.bar_cache[target.index()] = Some(val.terms);
        }
        Ok(())
    }

    /// One step of the bar recursion: bar(a_w) from bar(a_parent),
    /// where parent = sw when s commutes past w (then the step divides
    /// by 1+u⁻¹) and parent = sws* otherwise (then it applies T_s⁻¹).
    /// Uses T_s⁻¹ + 1 = u⁻²·(T_s + 1).
    pub(crate) fn bar_step(&self, s: usize, commute: bool, parent_bar: &MElt) -> Result<MElt> {
        let num = self
            .act_ts1(s, parent_bar)
            .scale(&LaurentPoly::monomial(1, -4));
        if commute {
            let den = LaurentPoly::from_terms([(0, 1), (-2, 1)]); // 1 + u⁻¹
            let mut terms = Column::new();
            for (y, p) in &num.terms {
                terms.insert(*y, p.exact_div(&den)?);
            }
            Ok(MElt { terms }.sub(parent_bar))
        } else {
            Ok(num.sub(parent_bar))
        }
    }

    /// Compute every self-dual column of length ≤ l (clamped to the
    /// safely enumerated region).
    pub fn ensure_columns_up_to(&mut self, l: u32) -> Result<()> {
        let g = self.g;
        let lmax = l.min(self.safe_length()) as i64;
        while self.done_len < lmax {
            let level = (self.done_len + 1) as u32;
            let targets: Vec<ElementId> = g
                .elements_of_length(level)
                .filter(|&x| g.is_twisted_involution(x))
                .collect();
            for &w in &targets {
                self.ensure_bar(w)?;
            }
            let solve = |&w: &ElementId| -> Result<(ElementId, Column)> {
                let bar_w = self.bar_cache[w.index()].as_ref().unwrap();
                let col = complete_column(g, w, 1, bar_w, &self.columns)?;
                check_column_shape(g, w, &col)?;
                Ok((w, col))
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

    /// The self-dual basis element A_w = v^(−l(w))·Σ_y P^σ_{y,w}(v²)·a_y.
    pub fn a_column(&mut self, w: ElementId) -> Result<MElt> {
        if !self.g.is_twisted_involution(w) {
            return Err(Error::NotTwistedInvolution(w.0));
        }
        self.ensure_columns_up_to(self.g.length(w))?;
        match &self.columns[w.index()] {
            Some(c) => Ok(MElt { terms: c.clone() }),
            None => Err(Error::PreconditionViolated(format!(
                "element {} is too close to the enumerated edge; rebuild with a larger bound",
                w.0
            ))),
        }
    }

    /// P^σ_{y,w} as a polynomial in u; zero unless y ≤ w.
    pub fn sigma_poly(&mut self, y: ElementId, w: ElementId) -> Result<IntPoly> {
        let g = self.g;
        for x in [y, w] {
            if !g.is_twisted_involution(x) {
                return Err(Error::NotTwistedInvolution(x.0));
            }
        }
        if !g.bruhat_leq(y, w) {
            return Ok(IntPoly::zero());
        }
        let c = self.a_column(w)?.coeff(y);
        if c.is_zero() {
            return Ok(IntPoly::zero());
        }
        c.to_int_poly_scaled(-(g.length(w) as i32), 2)
    }

    /// The coefficients (μ′, μ″) of v⁻¹ and v⁻² in
    /// v^(l(y)−l(w))·P^σ_{y,w}(v²): the u-coefficients in degrees
    /// (l(w)−l(y)−1)/2 and (l(w)−l(y)−2)/2, each zero when the exponent
    /// is not a nonnegative integer.
    pub fn mu_primes(&mut self, y: ElementId, w: ElementId) -> Result<(BigInt, BigInt)> {
        let p = self.sigma_poly(y, w)?;
        let gap = self.g.length(w) as i64 - self.g.length(y) as i64;
        let mp = if gap >= 1 && gap % 2 == 1 {
            p.coeff((gap - 1) / 2)
        } else {
            BigInt::zero()
        };
        let mpp = if gap >= 2 && gap % 2 == 0 {
            p.coeff((gap - 2) / 2)
        } else {
            BigInt::zero()
        };
        Ok((mp, mpp))
    }

    /// M^s_{y,w} under the standing hypotheses sy < y < w < sw with
    /// ε_y = ε_w.
    pub fn m_s_coefficient(&mut self, s: usize, y: ElementId, w: ElementId) -> Result<BigInt> {
        let g = self.g;
        for x in [y, w] {
            if !g.is_twisted_involution(x) {
                return Err(Error::NotTwistedInvolution(x.0));
            }
        }
        if !g.has_descent(s, y, Side::Left)
            || g.has_descent(s, w, Side::Left)
            || y == w
            || !g.bruhat_leq(y, w)
            || g.parity(y) != g.parity(w)
        {
            return Err(Error::PreconditionViolated(format!(
                "M^s needs sy < y < w < sw with matching parity; got s={}, y={}, w={}",
                s + 1,
                y.0,
                w.0
            )));
        }
        self.m_s_value(s, y, w)
    }

    /// The defining sum for M^s, valid under the weaker hypotheses
    /// sy < y, w < sw, ε_y = ε_w (y need not lie below w; the terms
    /// that would require it vanish through P^σ = 0).
    pub(crate) fn m_s_value(&mut self, s: usize, y: ElementId, w: ElementId) -> Result<BigInt> {
        let g = self.g;
        let (_, mpp) = self.mu_primes(y, w)?;
        let mut total = mpp;
        if y != w && g.bruhat_leq(y, w) {
            let (ly, lw) = (g.length(y), g.length(w));
            for len in ly + 1..lw {
                let xs: Vec<ElementId> = g
                    .elements_of_length(len)
                    .filter(|&x| {
                        g.is_twisted_involution(x)
                            && g.has_descent(s, x, Side::Left)
                            && g.bruhat_leq(y, x)
                            && g.bruhat_leq(x, w)
                    })
                    .collect();
                for x in xs {
                    let (mp_yx, _) = self.mu_primes(y, x)?;
                    if mp_yx.is_zero() {
                        continue;
                    }
                    let (mp_xw, _) = self.mu_primes(x, w)?;
                    total -= mp_yx * mp_xw;
                }
            }
        }
        let sw = g.mult_gen(s, w, Side::Left);
        if sw == g.mult_gen(g.star_gen(s), w, Side::Right) {
            let (mp, _) = self.mu_primes(y, sw)?;
            total -= mp;
        }
        let sy = g.mult_gen(s, y, Side::Left);
        if sy == g.mult_gen(g.star_gen(s), y, Side::Right) {
            let (mp, _) = self.mu_primes(sy, w)?;
            total += mp;
        }
        Ok(total)
    }

    /// Coefficients of m in the basis {A_x}, by descending elimination.
    pub fn expand_in_a(&mut self, m: &MElt) -> Result<BTreeMap<ElementId, LaurentPoly>> {
        let lmax = match m.support().map(|x| self.g.length(x)).max() {
            Some(l) => l,
            None => return Ok(BTreeMap::new()),
        };
        self.ensure_columns_up_to(lmax)?;
        expand_in_columns(self.g, &m.terms, 1, &self.columns)
    }

    /// Structure constants of the canonical-basis action: the map
    /// w′ ↦ b_{z,w,w′} with c_z·A_w = Σ b_{z,w,w′}·A_{w′}. Individual
    /// values may carry odd v-exponents; evenness is checked only where
    /// the module positivity pairing needs it.
    pub fn b_const(
        &mut self,
        z: ElementId,
        w: ElementId,
    ) -> Result<BTreeMap<ElementId, LaurentPoly>> {
        if !self.g.is_whole_group() {
            return Err(Error::FiniteGroupRequired);
        }
        let cz = self.hecke.c_basis(z)?;
        let aw = self.a_column(w)?;
        let acted = self.act_hecke(&cz, &aw);
        self.expand_in_a(&acted)
    }

    /// The two half-sums (δ = ±1) of P_{y,w} and P^σ_{y,w}, read in the
    /// shared variable u; errors unless both land in ℕ[u].
    pub fn positivity_pointwise(
        &mut self,
        y: ElementId,
        w: ElementId,
    ) -> Result<(IntPoly, IntPoly)> {
        let g = self.g;
        for x in [y, w] {
            if !g.is_twisted_involution(x) {
                return Err(Error::NotTwistedInvolution(x.0));
            }
        }
        if !g.bruhat_leq(y, w) {
            return Err(Error::PreconditionViolated(format!(
                "pointwise half-sums need y ≤ w; got y={}, w={}",
                y.0, w.0
            )));
        }
        let p = self.hecke.kl_polynomial(y, w)?;
        let ps = self.sigma_poly(y, w)?;
        let ctx = format!("pointwise half-sum at (y,w)=({},{})", y.0, w.0);
        Ok((p.half_combine(&ps, 1, &ctx)?, p.half_combine(&ps, -1, &ctx)?))
    }

    /// Check the pointwise half-sums over every comparable pair of
    /// twisted involutions of length ≤ `lmax`; returns the pair count.
    pub fn pointwise_sweep(&mut self, lmax: u32) -> Result<usize> {
        let g = self.g;
        let twisted = g.twisted_involutions_up_to(lmax.min(self.safe_length()));
        let mut pairs = 0;
        for &w in &twisted {
            for &y in &twisted {
                if g.length(y) <= g.length(w) && g.bruhat_leq(y, w) {
                    self.positivity_pointwise(y, w)?;
                    pairs += 1;
                }
            }
        }
        Ok(pairs)
    }

    /// The two half-sums (δ = ±1) of h̃_{z,w,w′} and b_{z,w,w′}, read in
    /// the shared variable u (h̃'s even v-exponents are compressed; b is
    /// reread literally, v ↦ u); errors unless both land in ℕ[u,u⁻¹].
    pub fn positivity_module(
        &mut self,
        z: ElementId,
        w: ElementId,
        wp: ElementId,
    ) -> Result<(LaurentPoly, LaurentPoly)> {
        if !self.g.is_whole_group() {
            return Err(Error::FiniteGroupRequired);
        }
        for x in [w, wp] {
            if !self.g.is_twisted_involution(x) {
                return Err(Error::NotTwistedInvolution(x.0));
            }
        }
        let ht = self.hecke.h_tilde(z, w, wp)?.compress_even()?;
        let b = self
            .b_const(z, w)?
            .remove(&wp)
            .unwrap_or_else(LaurentPoly::zero);
        let ctx = format!("module half-sum at (z,w,w′)=({},{},{})", z.0, w.0, wp.0);
        Ok((
            half_combine_laurent(&ht, &b, 1, &ctx)?,
            half_combine_laurent(&ht, &b, -1, &ctx)?,
        ))
    }

    /// Check the module half-sums for every z in W and every pair of
    /// twisted involutions (w, w′), recording structure constants with
    /// odd v-exponents along the way.
    pub fn module_positivity_sweep(&mut self) -> Result<ModulePositivityReport> {
        let g = self.g;
        if !g.is_whole_group() {
            return Err(Error::FiniteGroupRequired);
        }
        let twisted: Vec<ElementId> =
            g.elements().filter(|&x| g.is_twisted_involution(x)).collect();
        let zs: Vec<ElementId> = g.elements().collect();
        let mut report = ModulePositivityReport::default();
        for &w in &twisted {
            for &z in &zs {
                let b_row = self.b_const(z, w)?;
                let ht_row = self.hecke.h_tilde_row(z, w)?;
                for &wp in &twisted {
                    let ht = match ht_row.get(&wp) {
                        Some(p) => p.compress_even()?,
                        None => LaurentPoly::zero(),
                    };
                    let b = b_row.get(&wp).cloned().unwrap_or_else(LaurentPoly::zero);
                    if !b.is_even() {
                        report.odd_b.push((z.0, w.0, wp.0));
                    }
                    let ctx = format!(
                        "module half-sum at (z,w,w′)=({},{},{})",
                        z.0, w.0, wp.0
                    );
                    half_combine_laurent(&ht, &b, 1, &ctx)?;
                    half_combine_laurent(&ht, &b, -1, &ctx)?;
                    report.triples_checked += 1;
                }
            }
        }
        Ok(report)
    }

    /// Exact operator checks on the whole module: the quadratic
    /// identity (T_s+1)² = (u²+1)(T_s+1) for every generator, and the
    /// braid relation for every finite bond.
    pub fn verify_relations(&mut self) -> Result<()> {
        let g = self.g;
        if !g.is_whole_group() {
            return Err(Error::FiniteGroupRequired);
        }
        let twisted: Vec<ElementId> =
            g.elements().filter(|&x| g.is_twisted_involution(x)).collect();
        let u2p1 = LaurentPoly::from_terms([(4, 1), (0, 1)]);
        for s in 0..g.rank() {
            for &z in &twisted {
                let az = MElt::basis(g, z)?;
                let once = self.act_ts1(s, &az);
                let twice = self.act_ts1(s, &once);
                if twice != once.scale(&u2p1) {
                    return Err(Error::RelationViolated(format!(
                        "quadratic identity fails for generator {} at basis element {}",
                        s + 1,
                        z.0
                    )));
                }
            }
        }
        for s in 0..g.rank() {
            for t in s + 1..g.rank() {
                let m = g.matrix().entry(s, t);
                if m == INFINITY {
                    continue;
                }
                for &z in &twisted {
                    let az = MElt::basis(g, z)?;
                    let lhs = self.apply_braid(s, t, m, &az);
                    let rhs = self.apply_braid(t, s, m, &az);
                    if lhs != rhs {
                        return Err(Error::RelationViolated(format!(
                            "braid relation of order {} fails for generators {},{} at basis element {}",
                            m,
                            s + 1,
                            t + 1,
                            z.0
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// T_first·T_second·T_first·… (m factors) applied to m0, rightmost
    /// factor first.
    fn apply_braid(&self, first: usize, second: usize, m: u32, m0: &MElt) -> MElt {
        let mut cur = m0.clone();
        for i in (0..m).rev() {
            let s = if i % 2 == 0 { first } else { second };
            cur = self.apply_t(s, &cur);
        }
        cur
    }
}

/// Shape of a finished column: entries v^(−l(w))·P^σ_{y,w}(v²) with
/// P^σ ∈ Z[u], deg_u ≤ (l(w)−l(y)−1)/2 off the diagonal, and 1 on it.
fn check_column_shape(g: &Group, w: ElementId, col: &Column) -> Result<()> {
    let lw = g.length(w) as i32;
    for (y, p) in col {
        let ip = p.to_int_poly_scaled(-lw, 2)?;
        if *y == w {
            if !ip.is_one() {
                return Err(Error::InternalInvariant(format!(
                    "diagonal entry of column {} is {} instead of 1",
                    w.0, ip
                )));
            }
            continue;
        }
        let bound = (lw as i64 - g.length(*y) as i64 - 1) / 2;
        if ip.degree().map_or(false, |d| d as i64 > bound) {
            return Err(Error::InternalInvariant(format!(
                "entry ({},{}) of the σ-table has degree {:?} over the bound {}",
                y.0,
                w.0,
                ip.degree(),
                bound
            )));
        }
    }
    Ok(())
}
