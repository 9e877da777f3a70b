//! Deletion-contraction and the Matrix-Tree determinant.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::bipoly::BiPoly;
use crate::error::{check_limit, Result};
use crate::graph::Graph;

pub const MAX_DELETION_CONTRACTION_EDGES: usize = 12;
pub const MAX_MATRIX_TREE_VERTICES: usize = 64;

/// Is `v` reachable from `u` using every edge of `edges` except `skip`?
fn connected_without(edges: &[(usize, usize)], skip: usize, u: usize, v: usize) -> bool {
    let mut seen = vec![u];
    let mut stack = vec![u];
    while let Some(w) = stack.pop() {
        if w == v {
            return true;
        }
        for (i, &(a, b)) in edges.iter().enumerate() {
            if i == skip {
                continue;
            }
            let next = if a == w { b } else if b == w { a } else { continue };
            if !seen.contains(&next) {
                seen.push(next);
                stack.push(next);
            }
        }
    }
    false
}

/// Multigraph recursion on the edge list; loops and parallel edges appear
/// after contractions.
fn dc(edges: &[(usize, usize)]) -> BiPoly {
    let Some(&(u, v)) = edges.last() else {
        return BiPoly::one();
    };
    let last = edges.len() - 1;
    let rest = &edges[..last];
    if u == v {
        return &BiPoly::y() * &dc(rest);
    }
    let contracted: Vec<(usize, usize)> = rest
        .iter()
        .map(|&(a, b)| {
            let relabel = |w| if w == v { u } else { w };
            (relabel(a), relabel(b))
        })
        .collect();
    if !connected_without(edges, last, u, v) {
        return &BiPoly::x() * &dc(&contracted);
    }
    &dc(rest) + &dc(&contracted)
}

/// `T(G) = T(G - e) + T(G / e)` for ordinary edges, `x T(G / e)` for bridges
/// and `y T(G - e)` for loops.
pub fn tutte_deletion_contraction(g: &Graph) -> Result<BiPoly> {
    check_limit("edges for deletion-contraction", g.num_edges() as u64, MAX_DELETION_CONTRACTION_EDGES as u64)?;
    Ok(dc(g.edges()))
}

/// Spanning-tree count as the determinant of the reduced Laplacian, by
/// fraction-free (Bareiss) elimination.
pub fn matrix_tree_count(g: &Graph) -> Result<BigInt> {
    let v = g.num_vertices();
    check_limit("vertices for the Matrix-Tree determinant", v as u64, MAX_MATRIX_TREE_VERTICES as u64)?;
    if v <= 1 {
        return Ok(BigInt::from(v));
    }
    let n = v - 1;
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for &(a, b) in g.edges() {
        for (x, y) in [(a, b), (b, a)] {
            if x < n {
                m[x][x] += 1;
                if y < n {
                    m[x][y] -= 1;
                }
            }
        }
    }
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Ok(BigInt::zero());
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                let (quot, rem) = t.div_rem(&prev);
                debug_assert!(rem.is_zero());
                m[i][j] = quot;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    Ok(prev * sign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_psw_edge_expansion, build_sierpinski};

    #[test]
    fn small_graphs() {
        let tri = build_psw_edge_expansion(0).unwrap();
        let expected = &(&BiPoly::x().pow(2) + &BiPoly::x()) + &BiPoly::y();
        assert_eq!(tutte_deletion_contraction(tri.graph()).unwrap(), expected);
        let edge = Graph::new(2, vec![(0, 1)]).unwrap();
        assert_eq!(tutte_deletion_contraction(&edge).unwrap(), BiPoly::x());
        assert!(Graph::new(2, vec![(0, 1), (0, 1)]).is_err());
        let g2 = build_psw_edge_expansion(2).unwrap();
        assert!(tutte_deletion_contraction(g2.graph()).is_err());
    }

    #[test]
    fn four_cycle() {
        // T(C4) = x^3 + x^2 + x + y
        let c4 = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let expected = BiPoly::from_terms([
            ((3, 0), BigInt::from(1)),
            ((2, 0), BigInt::from(1)),
            ((1, 0), BigInt::from(1)),
            ((0, 1), BigInt::from(1)),
        ]);
        assert_eq!(tutte_deletion_contraction(&c4).unwrap(), expected);
    }

    #[test]
    fn kirchhoff() {
        assert_eq!(matrix_tree_count(build_psw_edge_expansion(0).unwrap().graph()).unwrap(), 3.into());
        assert_eq!(matrix_tree_count(build_psw_edge_expansion(1).unwrap().graph()).unwrap(), 54.into());
        assert_eq!(matrix_tree_count(build_psw_edge_expansion(2).unwrap().graph()).unwrap(), 209952.into());
        // SG(1) has the same tree count as G(1)
        assert_eq!(matrix_tree_count(build_sierpinski(1).unwrap().graph()).unwrap(), 54.into());
        let k4 = Graph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(matrix_tree_count(&k4).unwrap(), 16.into());
        let split = Graph::new(4, vec![(0, 1), (2, 3)]).unwrap();
        assert_eq!(matrix_tree_count(&split).unwrap(), 0.into());
    }
}
