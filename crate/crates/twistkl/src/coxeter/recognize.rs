//! Finite-type recognition and construction of matrices for named types.

use crate::error::{Error, Result};

use super::{CoxeterMatrix, INFINITY};

/// What a Coxeter matrix turned out to be.
#[derive(Debug, Clone)]
pub struct TypeInfo {
    pub finite: bool,
    /// Canonical name like "A3", "B2xA1"; `None` when not of finite type.
    pub name: Option<String>,
    pub order: Option<u128>,
    pub longest_length: Option<u32>,
}

fn factorial(n: u128) -> u128 {
    (1..=n).product()
}

/// Classify one connected component; returns (name, order, longest length)
/// when it is of finite type.
fn classify_component(m: &CoxeterMatrix, nodes: &[usize]) -> Option<(String, u128, u32)> {
    let n = nodes.len();
    if n == 1 {
        return Some(("A1".into(), 2, 1));
    }
    let mut edges = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            let lab = m.entry(nodes[a], nodes[b]);
            if lab != 2 {
                edges.push((a, b, lab));
            }
        }
    }
    if n == 2 {
        let lab = edges[0].2;
        if lab == INFINITY {
            return None;
        }
        let name = match lab {
            3 => "A2".to_string(),
            4 => "B2".to_string(),
            6 => "G2".to_string(),
            other => format!("I2({other})"),
        };
        return Some((name, 2 * lab as u128, lab));
    }
    // Rank >= 3: must be a tree with bonds 3, 4 or 5 and limited shape.
    if edges.len() != n - 1 {
        return None; // a connected graph with extra edges contains a cycle
    }
    if edges.iter().any(|&(_, _, lab)| lab == INFINITY || lab > 5) {
        return None;
    }
    let mut deg = vec![0usize; n];
    for &(a, b, _) in &edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    if deg.iter().any(|&d| d > 3) {
        return None;
    }
    let branches: Vec<usize> = (0..n).filter(|&v| deg[v] == 3).collect();
    let specials: Vec<(usize, usize, u32)> =
        edges.iter().copied().filter(|&(_, _, lab)| lab >= 4).collect();
    if branches.len() > 1 || specials.len() > 1 {
        return None;
    }
    let adj = |v: usize| -> Vec<usize> {
        edges
            .iter()
            .filter_map(|&(a, b, _)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    };
    if let Some(&c) = branches.first() {
        if !specials.is_empty() {
            return None;
        }
        // Arm lengths from the branch node.
        let mut arms: Vec<u32> = adj(c)
            .into_iter()
            .map(|start| {
                let mut len = 1;
                let mut prev = c;
                let mut cur = start;
                loop {
                    let next: Vec<usize> = adj(cur).into_iter().filter(|&x| x != prev).collect();
                    match next.as_slice() {
                        [] => break,
                        [x] => {
                            prev = cur;
                            cur = *x;
                            len += 1;
                        }
                        _ => unreachable!("second branch node was excluded"),
                    }
                }
                len
            })
            .collect();
        arms.sort_unstable();
        let nn = n as u128;
        return match arms.as_slice() {
            [1, 1, _] => Some((format!("D{n}"), factorial(nn) / 2 * (1 << n), (n * (n - 1)) as u32)),
            [1, 2, 2] => Some(("E6".into(), 51_840, 36)),
            [1, 2, 3] => Some(("E7".into(), 2_903_040, 63)),
            [1, 2, 4] => Some(("E8".into(), 696_729_600, 120)),
            _ => None,
        };
    }
    // A path. Locate the special bond, if any.
    match specials.as_slice() {
        [] => Some((format!("A{n}"), factorial(n as u128 + 1), (n * (n + 1) / 2) as u32)),
        &[(a, b, lab)] => {
            let at_end = deg[a] == 1 || deg[b] == 1;
            match (lab, at_end) {
                (4, true) => Some((format!("B{n}"), factorial(n as u128) << n, (n * n) as u32)),
                (4, false) if n == 4 => Some(("F4".into(), 1152, 24)),
                (5, true) if n == 3 => Some(("H3".into(), 120, 15)),
                (5, true) if n == 4 => Some(("H4".into(), 14_400, 60)),
                _ => None,
            }
        }
        _ => unreachable!(),
    }
}

/// Recognize the (possibly reducible) type of a Coxeter matrix.
pub fn recognize(m: &CoxeterMatrix) -> TypeInfo {
    let rank = m.rank();
    // Connected components of the diagram.
    let mut seen = vec![false; rank];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for start in 0..rank {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        let mut comp = Vec::new();
        seen[start] = true;
        while let Some(v) = stack.pop() {
            comp.push(v);
            for u in 0..rank {
                if !seen[u] && m.entry(v, u) != 2 {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    let mut names = Vec::new();
    let mut order: u128 = 1;
    let mut longest: u32 = 0;
    for comp in &comps {
        match classify_component(m, comp) {
            Some((name, o, l)) => {
                names.push(name);
                order *= o;
                longest += l;
            }
            None => {
                return TypeInfo { finite: false, name: None, order: None, longest_length: None }
            }
        }
    }
    TypeInfo {
        finite: true,
        name: Some(names.join("x")),
        order: Some(order),
        longest_length: Some(longest),
    }
}

/// Edge list (i, j, bond) of one named component; bonds of 2 are omitted.
fn component_edges(spec: &str) -> Result<(usize, Vec<(usize, usize, u32)>)> {
    let unknown = || Error::UnknownGroupType(spec.to_string());
    let path = |n: usize, last: u32| -> (usize, Vec<(usize, usize, u32)>) {
        let mut e: Vec<(usize, usize, u32)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1, 3)).collect();
        if let Some(tail) = e.last_mut() {
            tail.2 = last;
        }
        (n, e)
    };
    if let Some(rest) = spec.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
        let m: u32 = rest.parse().map_err(|_| unknown())?;
        if m < 2 {
            return Err(unknown());
        }
        return Ok((2, if m == 2 { vec![] } else { vec![(0, 1, m)] }));
    }
    let affine = spec.ends_with('~');
    let body = spec.trim_end_matches('~');
    let mut chars = body.chars();
    let letter = chars.next().ok_or_else(unknown)?;
    let n: usize = chars.as_str().parse().map_err(|_| unknown())?;
    if affine {
        return match (letter, n) {
            ('A', 1) => Ok((2, vec![(0, 1, INFINITY)])),
            ('A', n) if n >= 2 => {
                // Cycle on n + 1 nodes.
                let mut e: Vec<(usize, usize, u32)> = (0..n).map(|i| (i, i + 1, 3)).collect();
                e.push((0, n, 3));
                Ok((n + 1, e))
            }
            ('B', n) if n >= 3 => {
                // Chain 1 - 2 - ... - n with a 4 at the far end, fork node 0 at node 2.
                let mut e: Vec<(usize, usize, u32)> = (1..n).map(|i| (i, i + 1, 3)).collect();
                e.last_mut().unwrap().2 = 4;
                e.push((0, 2, 3));
                Ok((n + 1, e))
            }
            ('C', n) if n >= 2 => {
                let mut e: Vec<(usize, usize, u32)> = (0..n).map(|i| (i, i + 1, 3)).collect();
                e.first_mut().unwrap().2 = 4;
                e.last_mut().unwrap().2 = 4;
                Ok((n + 1, e))
            }
            ('D', n) if n >= 4 => {
                // Forks at both ends of the chain 2 - 3 - ... - (n-2).
                let mut e: Vec<(usize, usize, u32)> = (2..n - 2).map(|i| (i, i + 1, 3)).collect();
                e.push((0, 2, 3));
                e.push((1, 2, 3));
                e.push((n - 2, n - 1, 3));
                e.push((n - 2, n, 3));
                Ok((n + 1, e))
            }
            ('F', 4) => Ok((5, vec![(0, 1, 3), (1, 2, 3), (2, 3, 4), (3, 4, 3)])),
            ('G', 2) => Ok((3, vec![(0, 1, 3), (1, 2, 6)])),
            _ => Err(unknown()),
        };
    }
    match (letter, n) {
        ('A', n) if n >= 1 => Ok(path(n, 3)),
        ('B', n) | ('C', n) if n >= 2 => Ok(path(n, 4)),
        ('D', n) if n >= 4 => {
            let mut e: Vec<(usize, usize, u32)> = (0..n - 3).map(|i| (i, i + 1, 3)).collect();
            e.push((n - 3, n - 2, 3));
            e.push((n - 3, n - 1, 3));
            Ok((n, e))
        }
        ('E', 6) => Ok((6, vec![(0, 1, 3), (1, 2, 3), (2, 3, 3), (3, 4, 3), (2, 5, 3)])),
        ('E', 7) => Ok((7, vec![(0, 1, 3), (1, 2, 3), (2, 3, 3), (3, 4, 3), (4, 5, 3), (2, 6, 3)])),
        ('E', 8) => {
            Ok((8, vec![(0, 1, 3), (1, 2, 3), (2, 3, 3), (3, 4, 3), (4, 5, 3), (5, 6, 3), (2, 7, 3)]))
        }
        ('F', 4) => Ok((4, vec![(0, 1, 3), (1, 2, 4), (2, 3, 3)])),
        ('G', 2) => Ok((2, vec![(0, 1, 6)])),
        ('H', 2) => Ok((2, vec![(0, 1, 5)])),
        ('H', 3) => Ok((3, vec![(0, 1, 5), (1, 2, 3)])),
        ('H', 4) => Ok((4, vec![(0, 1, 5), (1, 2, 3), (2, 3, 3)])),
        _ => Err(unknown()),
    }
}

/// Build the Coxeter matrix for a named type, allowing products like
/// "A1xA1" or "B2xA3" joined with 'x'.
pub fn named_matrix(name: &str) -> Result<CoxeterMatrix> {
    let name = name.trim();
    if name.is_empty() {
        return Err(Error::UnknownGroupType(String::new()));
    }
    let mut total_rank = 0usize;
    let mut all_edges: Vec<(usize, usize, u32)> = Vec::new();
    for part in name.split(['x', 'X']) {
        let (rank, edges) = component_edges(part.trim())?;
        for (a, b, m) in edges {
            all_edges.push((total_rank + a, total_rank + b, m));
        }
        total_rank += rank;
    }
    CoxeterMatrix::from_edges(total_rank, &all_edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn info(name: &str) -> TypeInfo {
        recognize(&named_matrix(name).unwrap())
    }

    #[test]
    fn recognizes_named_types() {
        for (name, order, longest) in [
            ("A1", 2u128, 1u32),
            ("A2", 6, 3),
            ("A3", 24, 6),
            ("A4", 120, 10),
            ("B2", 8, 4),
            ("B3", 48, 9),
            ("B4", 384, 16),
            ("C3", 48, 9),
            ("D4", 192, 12),
            ("D5", 1920, 20),
            ("E6", 51_840, 36),
            ("E7", 2_903_040, 63),
            ("E8", 696_729_600, 120),
            ("F4", 1152, 24),
            ("G2", 12, 6),
            ("H2", 10, 5),
            ("H3", 120, 15),
            ("H4", 14_400, 60),
            ("I2(7)", 14, 7),
            ("I2(2)", 4, 2),
        ] {
            let t = info(name);
            assert!(t.finite, "{name} should be finite");
            assert_eq!(t.order, Some(order), "{name} order");
            assert_eq!(t.longest_length, Some(longest), "{name} longest");
        }
    }

    #[test]
    fn recognizes_products() {
        let t = info("A1xA1");
        assert_eq!(t.order, Some(4));
        assert_eq!(t.longest_length, Some(2));
        assert_eq!(t.name.as_deref(), Some("A1xA1"));
        let t = info("B2xA3");
        assert_eq!(t.order, Some(8 * 24));
        assert_eq!(t.longest_length, Some(4 + 6));
    }

    #[test]
    fn canonical_names() {
        assert_eq!(info("C3").name.as_deref(), Some("B3"));
        assert_eq!(info("H2").name.as_deref(), Some("I2(5)"));
        assert_eq!(info("I2(4)").name.as_deref(), Some("B2"));
        assert_eq!(info("I2(6)").name.as_deref(), Some("G2"));
        assert_eq!(info("I2(2)").name.as_deref(), Some("A1xA1"));
    }

    #[test]
    fn affine_types_are_infinite() {
        for name in ["A1~", "A2~", "B3~", "C2~", "D4~", "F4~", "G2~"] {
            let t = info(name);
            assert!(!t.finite, "{name} should be infinite");
            assert!(t.name.is_none());
        }
    }

    #[test]
    fn unknown_names_rejected() {
        assert!(named_matrix("Q5").is_err());
        assert!(named_matrix("E9").is_err());
        assert!(named_matrix("D3").is_err());
        assert!(named_matrix("B1").is_err());
        assert!(named_matrix("I2(1)").is_err());
        assert!(named_matrix("").is_err());
    }

    #[test]
    fn loops_and_big_branches_are_not_finite() {
        // 4-cycle of simple bonds (affine A3).
        let m = CoxeterMatrix::from_edges(4, &[(0, 1, 3), (1, 2, 3), (2, 3, 3), (0, 3, 3)]).unwrap();
        assert!(!recognize(&m).finite);
        // Star with four arms (affine D4).
        let m =
            CoxeterMatrix::from_edges(5, &[(0, 1, 3), (0, 2, 3), (0, 3, 3), (0, 4, 3)]).unwrap();
        assert!(!recognize(&m).finite);
        // A 5-bond not at the end of a path of length 4.
        let m = CoxeterMatrix::from_edges(4, &[(0, 1, 3), (1, 2, 5), (2, 3, 3)]).unwrap();
        assert!(!recognize(&m).finite);
    }
}
