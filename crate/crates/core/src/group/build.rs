//! Group construction and axiom validation.

use super::{Group, GroupError, MAX_GROUP_ORDER};
use crate::arith::SplitMix64;

/// Associativity is checked exhaustively up to this order, and on sampled
/// triples above it.
const EXHAUSTIVE_ASSOC_ORDER: usize = 64;
const SAMPLED_ASSOC_TRIPLES: usize = 10_000;

impl Group {
    /// Builds a validated group from an `n x n` Cayley table.
    ///
    /// Rejects non-Latin-square tables, tables without a two-sided identity
    /// or inverses, and associativity failures, each with a diagnostic naming
    /// the witness. If the identity is some element `e != 0`, ids 0 and `e`
    /// are swapped so the identity always sits at 0.
    pub fn from_cayley_table(table: &[Vec<usize>], name: impl Into<String>) -> Result<Group, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::NoIdentity);
        }
        if n > MAX_GROUP_ORDER {
            return Err(GroupError::OrderCap {
                n,
                max: MAX_GROUP_ORDER,
            });
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                return Err(GroupError::NotSquare {
                    row,
                    len: r.len(),
                    n,
                });
            }
            for (b, &v) in r.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::EntryOutOfRange {
                        a: row,
                        b,
                        value: v,
                        n,
                    });
                }
            }
        }

        // Latin square: no repeats in any row or column.
        let mut seen = vec![usize::MAX; n];
        for (row, r) in table.iter().enumerate() {
            for &v in r {
                if seen[v] == row {
                    return Err(GroupError::RowNotPermutation { row, value: v });
                }
                seen[v] = row;
            }
        }
        let mut seen = vec![usize::MAX; n];
        for col in 0..n {
            for row in table.iter() {
                let v = row[col];
                if seen[v] == col {
                    return Err(GroupError::ColNotPermutation { col, value: v });
                }
                seen[v] = col;
            }
        }

        // Two-sided identity.
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or(GroupError::NoIdentity)?;

        // Relabel so the identity is id 0 (swap labels 0 <-> identity).
        let relabel = |x: usize| -> usize {
            if x == identity {
                0
            } else if x == 0 {
                identity
            } else {
                x
            }
        };
        let mut flat = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                flat[relabel(a) * n + relabel(b)] = relabel(table[a][b]) as u16;
            }
        }

        Self::from_flat_table(flat, n, name)
    }

    pub(crate) fn from_flat_table(
        flat: Vec<u16>,
        n: usize,
        name: impl Into<String>,
    ) -> Result<Group, GroupError> {
        // Inverses: for each a find b with a*b = 0, then require b*a = 0.
        let mut inverse = vec![0u16; n];
        for a in 0..n {
            let b = (0..n)
                .find(|&b| flat[a * n + b] == 0)
                .ok_or(GroupError::MissingInverse { elem: a })?;
            if flat[b * n + a] != 0 {
                return Err(GroupError::MissingInverse { elem: a });
            }
            inverse[a] = b as u16;
        }

        // Associativity.
        let assoc = |a: usize, b: usize, c: usize| -> Result<(), GroupError> {
            let lhs = flat[flat[a * n + b] as usize * n + c] as usize;
            let rhs = flat[a * n + flat[b * n + c] as usize] as usize;
            if lhs != rhs {
                return Err(GroupError::NotAssociative { a, b, c, lhs, rhs });
            }
            Ok(())
        };
        if n <= EXHAUSTIVE_ASSOC_ORDER {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        assoc(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = SplitMix64(0x9e3779b9 ^ n as u64);
            for _ in 0..SAMPLED_ASSOC_TRIPLES {
                assoc(rng.below(n), rng.below(n), rng.below(n))?;
            }
        }

        // Element orders: least k >= 1 with a^k = identity.
        let mut element_order = vec![0u16; n];
        element_order[0] = 1;
        for a in 1..n {
            let mut x = a; // a^1
            let mut k = 1usize;
            while x != 0 {
                x = flat[x * n + a] as usize;
                k += 1;
            }
            element_order[a] = k as u16;
        }

        Ok(Group {
            n,
            name: name.into(),
            table: flat.into_boxed_slice(),
            inverse: inverse.into_boxed_slice(),
            element_order: element_order.into_boxed_slice(),
        })
    }

    /// Builds the group generated by permutations of `0..degree`, closing the
    /// generators under composition and assembling the Cayley table of the
    /// result. Composition is `(f * g)(x) = f(g(x))`.
    pub fn from_permutations(
        degree: usize,
        generators: &[Vec<usize>],
        name: impl Into<String>,
    ) -> Result<Group, GroupError> {
        Self::from_permutations_bounded(degree, generators, name, MAX_GROUP_ORDER)
    }

    pub(crate) fn from_permutations_bounded(
        degree: usize,
        generators: &[Vec<usize>],
        name: impl Into<String>,
        bound: usize,
    ) -> Result<Group, GroupError> {
        for (index, g) in generators.iter().enumerate() {
            let mut seen = vec![false; degree];
            if g.len() != degree {
                return Err(GroupError::NotAPermutation { index, degree });
            }
            for &img in g {
                if img >= degree || seen[img] {
                    return Err(GroupError::NotAPermutation { index, degree });
                }
                seen[img] = true;
            }
        }

        let identity: Vec<usize> = (0..degree).collect();
        let mut elems: Vec<Vec<usize>> = vec![identity.clone()];
        let mut index = std::collections::HashMap::new();
        index.insert(identity, 0usize);

        // BFS in id order so element numbering is deterministic.
        let mut next = 0;
        while next < elems.len() {
            let cur = elems[next].clone();
            for g in generators {
                let prod: Vec<usize> = (0..degree).map(|x| cur[g[x]]).collect();
                if !index.contains_key(&prod) {
                    if elems.len() >= bound {
                        return Err(GroupError::ClosureBound { bound });
                    }
                    index.insert(prod.clone(), elems.len());
                    elems.push(prod);
                }
            }
            next += 1;
        }

        let n = elems.len();
        let mut flat = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                let prod: Vec<usize> = (0..degree).map(|x| elems[a][elems[b][x]]).collect();
                flat[a * n + b] = index[&prod] as u16;
            }
        }
        Self::from_flat_table(flat, n, name)
    }
}
