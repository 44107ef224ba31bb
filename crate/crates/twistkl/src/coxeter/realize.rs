//! Exact element realizations.
//!
//! Elements are represented by their matrix action on the root lattice:
//! integer matrices when every bond is crystallographic (2, 3, 4, 6 or
//! infinite), matrices over Z[phi] when bonds of order 5 occur, and a
//! direct (length, first-letter) normal form for rank-2 groups with a
//! finite bond, which covers every dihedral group uniformly.

use crate::error::{Error, Result};

use super::{CoxeterMatrix, Side, INFINITY};

/// Element of Z[phi], phi^2 = phi + 1, stored as `a + b*phi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Golden {
    pub a: i64,
    pub b: i64,
}

impl Golden {
    pub const ZERO: Golden = Golden { a: 0, b: 0 };
    pub const ONE: Golden = Golden { a: 1, b: 0 };
    pub const PHI: Golden = Golden { a: 0, b: 1 };

    pub fn from_int(a: i64) -> Golden {
        Golden { a, b: 0 }
    }

    pub fn sub(self, o: Golden) -> Golden {
        Golden { a: self.a - o.a, b: self.b - o.b }
    }

    pub fn neg(self) -> Golden {
        Golden { a: -self.a, b: -self.b }
    }

    pub fn mul(self, o: Golden) -> Golden {
        // (a + b phi)(c + d phi) = ac + bd + (ad + bc + bd) phi
        let Golden { a, b } = self;
        let Golden { a: c, b: d } = o;
        Golden { a: a * c + b * d, b: a * d + b * c + b * d }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Sign under the real embedding phi = (1 + sqrt 5)/2 > 0.
    pub fn signum(self) -> i64 {
        // a + b phi > 0  iff  (2a + b) + b sqrt5 > 0.
        let p = 2 * self.a as i128 + self.b as i128;
        let q = self.b as i128;
        if p == 0 && q == 0 {
            0
        } else if p >= 0 && q >= 0 {
            1
        } else if p <= 0 && q <= 0 {
            -1
        } else if q > 0 {
            // p < 0: compare q sqrt5 against -p; 5 q^2 = p^2 cannot happen.
            if 5 * q * q > p * p {
                1
            } else {
                -1
            }
        } else {
            // q < 0, p > 0
            if p * p > 5 * q * q {
                1
            } else {
                -1
            }
        }
    }
}

/// Canonical, hashable form of a group element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CanonForm {
    Int(Box<[i64]>),
    Golden(Box<[Golden]>),
    /// Alternating word of `len` letters starting with `first`;
    /// `first = 0` whenever `len` is 0 or the full bond order.
    Dihedral { len: u32, first: u8 },
}

/// How elements of a particular group are realized.
#[derive(Debug, Clone)]
pub enum Realization {
    Int { rank: usize, cartan: Vec<i64> },
    Golden { rank: usize, cartan: Vec<Golden> },
    Dihedral { m: u32 },
}

/// Cartan-style integers with c_st * c_ts = 4 cos^2(pi / m_st).
fn int_cartan_pair(m: u32) -> Option<(i64, i64)> {
    match m {
        2 => Some((0, 0)),
        3 => Some((-1, -1)),
        4 => Some((-1, -2)),
        6 => Some((-1, -3)),
        INFINITY => Some((-2, -2)),
        _ => None,
    }
}

fn golden_cartan_pair(m: u32) -> Option<(Golden, Golden)> {
    if m == 5 {
        // 4 cos^2(pi/5) = phi^2, realized symmetrically as (-phi)(-phi).
        return Some((Golden::PHI.neg(), Golden::PHI.neg()));
    }
    int_cartan_pair(m).map(|(a, b)| (Golden::from_int(a), Golden::from_int(b)))
}

/// Pick the realization for a validated Coxeter matrix.
pub fn choose_realization(mat: &CoxeterMatrix) -> Result<Realization> {
    let rank = mat.rank();
    if rank == 2 && mat.entry(0, 1) != INFINITY {
        return Ok(Realization::Dihedral { m: mat.entry(0, 1) });
    }
    let mut crystallographic = true;
    let mut golden_ok = true;
    for i in 0..rank {
        for j in (i + 1)..rank {
            let m = mat.entry(i, j);
            if int_cartan_pair(m).is_none() {
                crystallographic = false;
                if m != 5 {
                    golden_ok = false;
                }
            }
        }
    }
    if crystallographic {
        let mut cartan = vec![0i64; rank * rank];
        for i in 0..rank {
            cartan[i * rank + i] = 2;
            for j in (i + 1)..rank {
                let (cij, cji) = int_cartan_pair(mat.entry(i, j)).unwrap();
                cartan[i * rank + j] = cij;
                cartan[j * rank + i] = cji;
            }
        }
        return Ok(Realization::Int { rank, cartan });
    }
    if golden_ok {
        let mut cartan = vec![Golden::ZERO; rank * rank];
        for i in 0..rank {
            cartan[i * rank + i] = Golden::from_int(2);
            for j in (i + 1)..rank {
                let (cij, cji) = golden_cartan_pair(mat.entry(i, j)).unwrap();
                cartan[i * rank + j] = cij;
                cartan[j * rank + i] = cji;
            }
        }
        return Ok(Realization::Golden { rank, cartan });
    }
    Err(Error::UnsupportedMatrix(
        "bond orders of 7 or more are only supported in rank 2".into(),
    ))
}

impl Realization {
    pub fn identity(&self) -> CanonForm {
        match self {
            Realization::Int { rank, .. } => {
                let mut m = vec![0i64; rank * rank];
                for i in 0..*rank {
                    m[i * rank + i] = 1;
                }
                CanonForm::Int(m.into_boxed_slice())
            }
            Realization::Golden { rank, .. } => {
                let mut m = vec![Golden::ZERO; rank * rank];
                for i in 0..*rank {
                    m[i * rank + i] = Golden::ONE;
                }
                CanonForm::Golden(m.into_boxed_slice())
            }
            Realization::Dihedral { .. } => CanonForm::Dihedral { len: 0, first: 0 },
        }
    }

    /// Multiply by generator `s` on the given side.
    pub fn mul_gen(&self, w: &CanonForm, s: usize, side: Side) -> CanonForm {
        match (self, w) {
            (Realization::Int { rank, cartan }, CanonForm::Int(m)) => {
                let n = *rank;
                let mut out = m.clone();
                match side {
                    Side::Right => {
                        // (M S_s) col k = M col k - c_{sk} * (M col s)
                        let col_s: Vec<i64> = (0..n).map(|r| m[r * n + s]).collect();
                        for k in 0..n {
                            let c = cartan[s * n + k];
                            if c == 0 {
                                continue;
                            }
                            for r in 0..n {
                                out[r * n + k] -= c * col_s[r];
                            }
                        }
                    }
                    Side::Left => {
                        // (S_s M) row s = row s - sum_k c_{sk} * row k
                        let mut new_row = vec![0i64; n];
                        for c in 0..n {
                            new_row[c] = m[s * n + c];
                        }
                        for k in 0..n {
                            let cf = cartan[s * n + k];
                            if cf == 0 {
                                continue;
                            }
                            for c in 0..n {
                                new_row[c] -= cf * m[k * n + c];
                            }
                        }
                        out[s * n..(s + 1) * n].copy_from_slice(&new_row);
                    }
                }
                CanonForm::Int(out)
            }
            (Realization::Golden { rank, cartan }, CanonForm::Golden(m)) => {
                let n = *rank;
                let mut out = m.clone();
                match side {
                    Side::Right => {
                        let col_s: Vec<Golden> = (0..n).map(|r| m[r * n + s]).collect();
                        for k in 0..n {
                            let c = cartan[s * n + k];
                            if c.is_zero() {
                                continue;
                            }
                            for r in 0..n {
                                out[r * n + k] = out[r * n + k].sub(c.mul(col_s[r]));
                            }
                        }
                    }
                    Side::Left => {
                        let mut new_row = vec![Golden::ZERO; n];
                        for c in 0..n {
                            new_row[c] = m[s * n + c];
                        }
                        for k in 0..n {
                            let cf = cartan[s * n + k];
                            if cf.is_zero() {
                                continue;
                            }
                            for c in 0..n {
                                new_row[c] = new_row[c].sub(cf.mul(m[k * n + c]));
                            }
                        }
                        out[s * n..(s + 1) * n].copy_from_slice(&new_row);
                    }
                }
                CanonForm::Golden(out)
            }
            (Realization::Dihedral { m }, &CanonForm::Dihedral { len, first }) => {
                dihedral_mul(*m, len, first, s as u8, side)
            }
            _ => unreachable!("canonical form does not match realization"),
        }
    }

    /// Bitmask of right descents, read off the canonical form.
    pub fn right_descents(&self, w: &CanonForm) -> u32 {
        match (self, w) {
            (Realization::Int { rank, .. }, CanonForm::Int(m)) => {
                let n = *rank;
                let mut mask = 0u32;
                for j in 0..n {
                    if column_sign_int(m, n, j) < 0 {
                        mask |= 1 << j;
                    }
                }
                mask
            }
            (Realization::Golden { rank, .. }, CanonForm::Golden(m)) => {
                let n = *rank;
                let mut mask = 0u32;
                for j in 0..n {
                    if column_sign_golden(m, n, j) < 0 {
                        mask |= 1 << j;
                    }
                }
                mask
            }
            (Realization::Dihedral { m }, &CanonForm::Dihedral { len, first }) => {
                if len == 0 {
                    0
                } else if len == *m {
                    0b11
                } else {
                    let last = (first as u32 + (len - 1)) % 2;
                    1 << last
                }
            }
            _ => unreachable!("canonical form does not match realization"),
        }
    }

}

/// Sign of the root `w(alpha_j)` stored in column `j`: every root is
/// totally nonnegative or totally nonpositive in simple-root coordinates.
fn column_sign_int(m: &[i64], n: usize, j: usize) -> i64 {
    let mut pos = false;
    let mut neg = false;
    for r in 0..n {
        let e = m[r * n + j];
        pos |= e > 0;
        neg |= e < 0;
    }
    assert!(!(pos && neg), "mixed-sign root column; realization is broken");
    if neg {
        -1
    } else {
        1
    }
}

fn column_sign_golden(m: &[Golden], n: usize, j: usize) -> i64 {
    let mut pos = false;
    let mut neg = false;
    for r in 0..n {
        match m[r * n + j].signum() {
            1 => pos = true,
            -1 => neg = true,
            _ => {}
        }
    }
    assert!(!(pos && neg), "mixed-sign root column; realization is broken");
    if neg {
        -1
    } else {
        1
    }
}

/// Multiplication in the dihedral normal form. Elements are alternating
/// words; the longest element (len = m) is stored with `first = 0`.
fn dihedral_mul(m: u32, len: u32, first: u8, s: u8, side: Side) -> CanonForm {
    let canon = |len: u32, first: u8| {
        if len == 0 || len == m {
            CanonForm::Dihedral { len, first: 0 }
        } else {
            CanonForm::Dihedral { len, first }
        }
    };
    match side {
        Side::Left => {
            if len == 0 {
                canon(1, s)
            } else if len == m {
                // Delete the first letter of the representative starting with s.
                canon(m - 1, (s + 1) % 2)
            } else if s == first {
                canon(len - 1, (first + 1) % 2)
            } else {
                canon(len + 1, s)
            }
        }
        Side::Right => {
            if len == 0 {
                canon(1, s)
            } else if len == m {
                // Representative ending with s starts with s + m - 1 (mod 2).
                canon(m - 1, ((s as u32 + m - 1) % 2) as u8)
            } else {
                let last = ((first as u32 + (len - 1)) % 2) as u8;
                if s == last {
                    canon(len - 1, first)
                } else {
                    canon(len + 1, first)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_arithmetic() {
        let phi = Golden::PHI;
        assert_eq!(phi.mul(phi), Golden { a: 1, b: 1 }); // phi^2 = 1 + phi
        assert_eq!(phi.mul(phi).sub(phi), Golden::ONE);
        assert_eq!(Golden::from_int(3).mul(phi), Golden { a: 0, b: 3 });
    }

    #[test]
    fn golden_sign_matches_embedding() {
        // phi ~ 1.618: check a grid of small values against f64.
        for a in -6i64..=6 {
            for b in -6i64..=6 {
                let x = Golden { a, b };
                let f = a as f64 + b as f64 * (1.0 + 5f64.sqrt()) / 2.0;
                let expect = if f.abs() < 1e-9 { 0 } else if f > 0.0 { 1 } else { -1 };
                assert_eq!(x.signum(), expect, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn dihedral_longest_element_edges() {
        // m = 3: s0 s1 s0 = s1 s0 s1 is the longest element.
        let w0 = CanonForm::Dihedral { len: 3, first: 0 };
        assert_eq!(dihedral_mul(3, 3, 0, 0, Side::Left), CanonForm::Dihedral { len: 2, first: 1 });
        assert_eq!(dihedral_mul(3, 3, 0, 1, Side::Left), CanonForm::Dihedral { len: 2, first: 0 });
        assert_eq!(dihedral_mul(3, 3, 0, 0, Side::Right), CanonForm::Dihedral { len: 2, first: 0 });
        assert_eq!(dihedral_mul(3, 3, 0, 1, Side::Right), CanonForm::Dihedral { len: 2, first: 1 });
        // Build w0 from below: (s0 s1) * s0 on the right.
        assert_eq!(dihedral_mul(3, 2, 0, 0, Side::Right), w0);
    }
}
