//! Breadth-first construction and freezing of a group.

use std::collections::HashMap;

use crate::error::{Error, Result};

use super::realize::{choose_realization, Realization};
use super::recognize::recognize;
use super::{CoxeterMatrix, Group, Side, StarMap, OUTSIDE};

/// Extra levels enumerated beyond a requested length bound, so that
/// short excursions (tilde moves, case classification) stay in range.
pub(super) const CAP_MARGIN: u32 = 4;

pub(super) fn build_group(
    matrix: CoxeterMatrix,
    star: StarMap,
    length_bound: Option<u32>,
) -> Result<Group> {
    let realization = choose_realization(&matrix)?;
    build_with_realization(matrix, star, length_bound, realization)
}

/// Same as `build_group` but with the realization chosen by the caller;
/// used by tests to cross-check independent element models.
pub(super) fn build_with_realization(
    matrix: CoxeterMatrix,
    star: StarMap,
    length_bound: Option<u32>,
    realization: Realization,
) -> Result<Group> {
    let rank = matrix.rank();
    star.validate(&matrix)?;
    let info = recognize(&matrix);
    // Finite groups are always enumerated whole; a bound is required
    // (and padded) only when the group is infinite.
    let cap: Option<u32> = if info.finite {
        None
    } else {
        Some(length_bound.ok_or(Error::NeedsLengthBound)?.saturating_add(CAP_MARGIN))
    };

    let mut canon = Vec::new();
    let mut inv_canon = Vec::new();
    let mut length: Vec<u32> = Vec::new();
    let mut rdesc: Vec<u32> = Vec::new();
    let mut ldesc: Vec<u32> = Vec::new();
    let mut discovery: Vec<(u32, u8)> = Vec::new();
    let mut rmul: Vec<u32> = Vec::new();
    let mut index: HashMap<_, u32> = HashMap::new();

    let e = realization.identity();
    canon.push(e.clone());
    inv_canon.push(e.clone());
    length.push(0);
    rdesc.push(0);
    ldesc.push(0);
    discovery.push((0, 0));
    rmul.extend(std::iter::repeat(OUTSIDE).take(rank));
    index.insert(e, 0u32);

    let mut i = 0usize;
    while i < canon.len() {
        let li = length[i];
        if cap.is_some_and(|c| li >= c) {
            // At the cap: ascents stay OUTSIDE, descents were set by parents.
            i += 1;
            continue;
        }
        for s in 0..rank {
            if rmul[i * rank + s] != OUTSIDE {
                continue;
            }
            let f = realization.mul_gen(&canon[i], s, Side::Right);
            let j = match index.get(&f) {
                Some(&j) => j,
                None => {
                    let j = canon.len() as u32;
                    let inv_f = realization.mul_gen(&inv_canon[i], s, Side::Left);
                    rdesc.push(realization.right_descents(&f));
                    ldesc.push(realization.right_descents(&inv_f));
                    length.push(li + 1);
                    discovery.push((i as u32, s as u8));
                    inv_canon.push(inv_f);
                    canon.push(f.clone());
                    rmul.extend(std::iter::repeat(OUTSIDE).take(rank));
                    index.insert(f, j);
                    j
                }
            };
            rmul[i * rank + s] = j;
            rmul[j as usize * rank + s] = i as u32;
        }
        i += 1;
    }

    let n = canon.len();
    if cap.is_none() {
        let expect = info.order.expect("finite type has a known order");
        if n as u128 != expect {
            return Err(Error::InternalInvariant(format!(
                "enumerated {n} elements but the recognized type has order {expect}"
            )));
        }
    }

    // Left multiplication table.
    let mut lmul = vec![OUTSIDE; n * rank];
    for i in 0..n {
        for s in 0..rank {
            let f = realization.mul_gen(&canon[i], s, Side::Left);
            match index.get(&f) {
                Some(&j) => lmul[i * rank + s] = j,
                None => {
                    if Some(length[i]) != cap {
                        return Err(Error::InternalInvariant(
                            "left product missing inside the enumerated region".into(),
                        ));
                    }
                }
            }
        }
    }

    // Inverses: the inverse has the same length, so it is always present.
    let mut inverse = vec![0u32; n];
    for i in 0..n {
        inverse[i] = *index
            .get(&inv_canon[i])
            .ok_or_else(|| Error::InternalInvariant("inverse missing from the region".into()))?;
    }

    // The diagram automorphism, pushed along discovery edges:
    // star(w s) = star(w) star(s). Star preserves length, so every
    // product below stays strictly inside the region.
    let mut star_of = vec![0u32; n];
    for i in 1..n {
        let (p, s) = discovery[i];
        let sp = star_of[p as usize] as usize;
        let im = rmul[sp * rank + star.apply(s as usize)];
        if im == OUTSIDE {
            return Err(Error::InternalInvariant("star image missing from the region".into()));
        }
        star_of[i] = im;
    }
    debug_assert!((0..n).all(|i| star_of[star_of[i] as usize] as usize == i));

    let twisted: Vec<bool> = (0..n).map(|i| inverse[i] == star_of[i]).collect();

    // level_start[l] = first id of length >= l; one past-the-end entry.
    let max_len = *length.last().expect("nonempty");
    let mut level_start = vec![0u32; max_len as usize + 2];
    for i in 0..n {
        level_start[length[i] as usize + 1] = i as u32 + 1;
    }
    for l in 1..level_start.len() {
        if level_start[l] == 0 {
            level_start[l] = level_start[l - 1];
        }
    }

    Ok(Group {
        matrix,
        star,
        info,
        rank,
        requested_bound: if cap.is_some() { length_bound } else { None },
        cap,
        length,
        rdesc,
        ldesc,
        inverse,
        star_of,
        twisted,
        rmul,
        lmul,
        level_start,
    })
}
