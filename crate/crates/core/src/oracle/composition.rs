//! Re-derives the one-generation recursions from the gluing itself: three
//! copies, each in one of the five hub classes, are identified at their hubs
//! and the class of the result is read off a six-node union-find.
//!
//! Nodes `0, 1, 2` are the identified vertices and `3 + i` is the hub that
//! copy `i` keeps to itself. Copy `i` sends its `A` to `[0, 2, 1][i]`, its
//! `B` to `[2, 1, 0][i]` and its `C` to `3 + i`. For PSW the new hubs are
//! the identified vertices; for the gasket they are the three unshared
//! corners.

use std::collections::BTreeMap;

use crate::bipoly::BiPoly;
use crate::dsu::UnionFind;
use crate::error::Result;
use crate::graph::Family;
use crate::oracle::census::HubPattern;
use crate::recursion::PartitionTriple;
use crate::semiring::Semiring;

const COPY_A: [usize; 3] = [0, 2, 1];
const COPY_B: [usize; 3] = [2, 1, 0];

/// One of the `5^3` hub-class configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Configuration {
    pub copies: [HubPattern; 3],
    /// Class of the glued graph with respect to its new hubs.
    pub result: HubPattern,
    /// Identifications that joined two different components (2 or 3).
    pub merges: usize,
    /// Components of the six-node graph that contain no new hub.
    pub hubless: usize,
}

fn new_hubs(family: Family) -> [usize; 3] {
    match family {
        Family::Psw => [0, 1, 2],
        Family::Sierpinski => [3, 4, 5],
    }
}

pub fn configurations(family: Family) -> Vec<Configuration> {
    let hubs = new_hubs(family);
    let mut out = Vec::with_capacity(125);
    for &p0 in &HubPattern::ALL {
        for &p1 in &HubPattern::ALL {
            for &p2 in &HubPattern::ALL {
                let copies = [p0, p1, p2];
                let mut uf = UnionFind::new(6);
                let mut parts = 0;
                for (i, pat) in copies.iter().enumerate() {
                    let (a, b, c) = (COPY_A[i], COPY_B[i], 3 + i);
                    parts += pat.hub_components();
                    match pat {
                        HubPattern::Together => {
                            uf.union(a, b);
                            uf.union(a, c);
                        }
                        HubPattern::SplitA => {
                            uf.union(b, c);
                        }
                        HubPattern::SplitB => {
                            uf.union(a, c);
                        }
                        HubPattern::SplitC => {
                            uf.union(a, b);
                        }
                        HubPattern::Separate => {}
                    }
                }
                let result = HubPattern::from_roots(uf.find(hubs[0]), uf.find(hubs[1]), uf.find(hubs[2]));
                // 9 copy hubs collapse to 6 nodes; the singletons at nodes
                // 3..6 are not identified with anything
                let merges = parts - uf.components();
                let hubless = uf.components() - result.hub_components();
                out.push(Configuration { copies, result, merges, hubless });
            }
        }
    }
    out
}

/// Exponents of `(class 1, class 2, class 3)` in a product of three copy
/// classes, where class 2 is any one-hub split.
fn class_exponents(copies: &[HubPattern; 3]) -> [u32; 3] {
    let mut e = [0; 3];
    for p in copies {
        e[p.hub_components() - 1] += 1;
    }
    e
}

/// Monomial table of the Tutte class recursion: for each result class and
/// number of merges, the multiset of `(T1, T2, T3)` exponent triples with
/// multiplicities. Only the PSW orientation is meaningful for the Tutte
/// classes since the gasket's extra state is not tracked.
pub type Table = BTreeMap<(HubPattern, usize), BTreeMap<[u32; 3], u64>>;

pub fn tutte_table(family: Family) -> Table {
    let mut table = Table::new();
    for c in configurations(family) {
        *table
            .entry((c.result, c.merges))
            .or_default()
            .entry(class_exponents(&c.copies))
            .or_default() += 1;
    }
    table
}

fn monomial<S: Semiring>(vals: &[S; 3], e: [u32; 3]) -> S {
    vals[0].pow(e[0]).times(&vals[1].pow(e[1])).times(&vals[2].pow(e[2]))
}

/// One generation of the partition classes computed from the gluing table:
/// merges = 2 carries a factor `y - 1`, merges = 3 a factor `1/(x - 1)`.
pub fn compose_partition(t: &PartitionTriple) -> Result<PartitionTriple> {
    let vals = [t.t1.clone(), t.t2.clone(), t.t3.clone()];
    let table = tutte_table(Family::Psw);
    let class = |pattern: HubPattern| -> Result<BiPoly> {
        let mut acc = BiPoly::zero();
        for merges in [2, 3] {
            let Some(terms) = table.get(&(pattern, merges)) else { continue };
            let mut part = BiPoly::zero();
            for (&e, &count) in terms {
                part = &part + &monomial(&vals, e).scaled(count);
            }
            acc = &acc + &match merges {
                2 => &part * &BiPoly::y_minus_one(),
                _ => part.div_exact_xminus1(1)?,
            };
        }
        Ok(acc)
    };
    let t2 = class(HubPattern::SplitA)?;
    for other in [HubPattern::SplitB, HubPattern::SplitC] {
        if class(other)? != t2 {
            return Err(crate::error::Error::Inconsistent(format!(
                "class {other} differs from BC|A"
            )));
        }
    }
    Ok(PartitionTriple {
        level: t.level + 1,
        t1: class(HubPattern::Together)?,
        t2,
        t3: class(HubPattern::Separate)?,
    })
}

/// Probability table: configurations in which every component contains a
/// new hub, keyed by result class, with monomials in `(R, B, T)` where `R`
/// is "connected", `B` any fixed one-hub split with two components and `T`
/// three separated components.
pub fn probability_table(family: Family) -> BTreeMap<HubPattern, BTreeMap<[u32; 3], u64>> {
    let mut table: BTreeMap<HubPattern, BTreeMap<[u32; 3], u64>> = BTreeMap::new();
    for c in configurations(family).into_iter().filter(|c| c.hubless == 0) {
        *table
            .entry(c.result)
            .or_default()
            .entry(class_exponents(&c.copies))
            .or_default() += 1;
    }
    table
}

/// `(R, B, T)` one generation on, from the probability table.
pub fn compose_probabilities<S: Semiring>(family: Family, r: &S, b: &S, t: &S) -> [S; 3] {
    let table = probability_table(family);
    let vals = [r.clone(), b.clone(), t.clone()];
    let class = |pattern: HubPattern| {
        table.get(&pattern).map_or_else(S::empty_sum, |terms| {
            terms
                .iter()
                .fold(S::empty_sum(), |acc, (&e, &count)| acc.plus(&monomial(&vals, e).scaled(count)))
        })
    };
    [
        class(HubPattern::Together),
        class(HubPattern::SplitA),
        class(HubPattern::Separate),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recursion::{initial_state, state_to_partition, step_partition};

    fn entries(pairs: &[([u32; 3], u64)]) -> BTreeMap<[u32; 3], u64> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn merges_are_two_or_three() {
        for family in [Family::Psw, Family::Sierpinski] {
            let configs = configurations(family);
            assert_eq!(configs.len(), 125);
            assert!(configs.iter().all(|c| c.merges == 2 || c.merges == 3));
        }
    }

    #[test]
    fn psw_tutte_table() {
        let t = tutte_table(Family::Psw);
        assert_eq!(
            t[&(HubPattern::Together, 2)],
            entries(&[([3, 0, 0], 1), ([2, 1, 0], 3), ([1, 2, 0], 3), ([0, 3, 0], 1)])
        );
        assert_eq!(
            t[&(HubPattern::Together, 3)],
            entries(&[
                ([2, 0, 1], 3),
                ([2, 1, 0], 6),
                ([1, 2, 0], 12),
                ([0, 3, 0], 6),
                ([0, 2, 1], 3),
                ([1, 1, 1], 6),
            ])
        );
        assert_eq!(
            t[&(HubPattern::SplitA, 3)],
            entries(&[
                ([1, 2, 0], 4),
                ([1, 1, 1], 4),
                ([0, 3, 0], 4),
                ([0, 2, 1], 4),
                ([1, 0, 2], 1),
                ([0, 1, 2], 1),
            ])
        );
        assert_eq!(
            t[&(HubPattern::Separate, 3)],
            entries(&[([0, 3, 0], 8), ([0, 2, 1], 12), ([0, 1, 2], 6), ([0, 0, 3], 1)])
        );
        assert!(!t.contains_key(&(HubPattern::SplitA, 2)));
        assert!(!t.contains_key(&(HubPattern::Separate, 2)));
    }

    #[test]
    fn composition_matches_partition_recursion() {
        let mut t = state_to_partition(&initial_state());
        for _ in 0..2 {
            let next = step_partition(&t).unwrap();
            assert_eq!(compose_partition(&t).unwrap(), next);
            t = next;
        }
    }

    #[test]
    fn probability_tables() {
        let psw = probability_table(Family::Psw);
        assert_eq!(psw[&HubPattern::Together], entries(&[([3, 0, 0], 1), ([2, 1, 0], 6)]));
        assert_eq!(psw[&HubPattern::SplitA], entries(&[([1, 2, 0], 4)]));
        let sg = probability_table(Family::Sierpinski);
        assert_eq!(sg[&HubPattern::Together], entries(&[([3, 0, 0], 1), ([2, 1, 0], 6)]));
        assert_eq!(sg[&HubPattern::SplitA], entries(&[([2, 1, 0], 1), ([2, 0, 1], 1), ([1, 2, 0], 7)]));
        assert_eq!(
            sg[&HubPattern::Separate],
            entries(&[([1, 2, 0], 3), ([1, 1, 1], 12), ([0, 3, 0], 14)])
        );
    }
}
