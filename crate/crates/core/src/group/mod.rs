//! Finite-group kernel over explicit Cayley tables.
//!
//! A [`Group`] is an order-`n` multiplication table on dense element ids
//! `0..n` with the identity pinned at id 0. Everything else in the crate
//! (subgroup machinery, Sylow theory, quotients, isomorphism testing, the
//! enhanced power graph) works on this representation.

mod build;
mod isomorphism;
mod predicates;
mod subgroups;

pub use isomorphism::{
    automorphism_count, automorphism_count_with_budget, is_isomorphic, is_isomorphic_with_budget,
    IsoInvariants, SearchBudget,
};
pub use predicates::UniqueOrderPSubgroup;
pub use subgroups::{ConjClasses, DerivedSeries, Quotient, NORMAL_SUBGROUP_BOUND};

use thiserror::Error;

/// Hard cap on constructible group order. Family and catalog constructors
/// stay at or below [`CATALOG_MAX_ORDER`]; the higher kernel cap admits the
/// largest explicitly supported matrix group, GL2(9) of order 5760.
pub const MAX_GROUP_ORDER: usize = 5760;

/// Order cap for catalog generation and the CLI family constructors.
pub const CATALOG_MAX_ORDER: usize = 512;

/// Order cap for the plain isomorphism entry point.
pub const ISO_ORDER_CAP: usize = 128;

/// Order cap for automorphism counting.
pub const AUT_ORDER_CAP: usize = 64;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("cayley table is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("group order {n} exceeds the construction cap {max}")]
    OrderCap { n: usize, max: usize },
    #[error("table entry at ({a},{b}) is {value}, out of range 0..{n}")]
    EntryOutOfRange {
        a: usize,
        b: usize,
        value: usize,
        n: usize,
    },
    #[error("row {row} is not a permutation: value {value} appears twice")]
    RowNotPermutation { row: usize, value: usize },
    #[error("column {col} is not a permutation: value {value} appears twice")]
    ColNotPermutation { col: usize, value: usize },
    #[error("table has no two-sided identity element")]
    NoIdentity,
    #[error("element {elem} has no two-sided inverse")]
    MissingInverse { elem: usize },
    #[error("associativity fails at ({a},{b},{c}): ({a}*{b})*{c} = {lhs} but {a}*({b}*{c}) = {rhs}")]
    NotAssociative {
        a: usize,
        b: usize,
        c: usize,
        lhs: usize,
        rhs: usize,
    },
    #[error("generator {index} is not a permutation of 0..{degree}")]
    NotAPermutation { index: usize, degree: usize },
    #[error("permutation closure exceeded the order bound {bound}")]
    ClosureBound { bound: usize },
    #[error("the given element set is not a subgroup")]
    NotASubgroup,
    #[error("the given subgroup is not normal")]
    NotNormal,
    #[error("{0} is not prime")]
    NotPrime(usize),
    #[error("group order {n} exceeds the cap {cap} for this operation")]
    OpOrderCap { n: usize, cap: usize },
    #[error("search budget exhausted after {spent} steps (budget {budget})")]
    BudgetExhausted { spent: u64, budget: u64 },
    #[error("enumeration exceeded the resource bound of {bound} subgroups")]
    ResourceBound { bound: usize },
}

/// A finite group as a validated Cayley table.
///
/// Invariants established at construction:
/// * id 0 is the two-sided identity,
/// * every row and column of the table is a permutation of `0..n`,
/// * associativity holds (checked exhaustively for n <= 64, sampled above),
/// * `inverse` and `element_order` are consistent with the table.
#[derive(Clone)]
pub struct Group {
    n: usize,
    name: String,
    /// Flat row-major table; `table[a * n + b]` is the product `a * b`.
    table: Box<[u16]>,
    inverse: Box<[u16]>,
    element_order: Box<[u16]>,
}

impl Group {
    /// Group order `|G|`.
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    /// Product `a * b` from the table. Panics on out-of-range ids.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        assert!(a < self.n && b < self.n, "element id out of range");
        self.table[a * self.n + b] as usize
    }

    /// Unchecked product; callers guarantee `a, b < n`.
    #[inline]
    pub(crate) fn mul_fast(&self, a: usize, b: usize) -> usize {
        debug_assert!(a < self.n && b < self.n);
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        assert!(a < self.n, "element id out of range");
        self.inverse[a] as usize
    }

    /// Conjugate `g * x * g^-1`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// Commutator `a^-1 * b^-1 * a * b`.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    /// `a^k` by repeated squaring against the table; negative exponents go
    /// through the inverse.
    pub fn pow(&self, a: usize, k: i64) -> usize {
        assert!(a < self.n, "element id out of range");
        let (mut base, mut e) = if k < 0 {
            (self.inv(a), k.unsigned_abs())
        } else {
            (a, k as u64)
        };
        let mut acc = 0usize;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_fast(acc, base);
            }
            base = self.mul_fast(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of `a`: least k > 0 with `a^k = 1`.
    pub fn elem_order(&self, a: usize) -> usize {
        assert!(a < self.n, "element id out of range");
        self.element_order[a] as usize
    }

    /// Multiset of element orders as ascending `(order, count)` pairs.
    pub fn order_census(&self) -> Vec<(usize, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for a in 0..self.n {
            *counts.entry(self.element_order[a] as usize).or_insert(0) += 1;
        }
        counts.into_iter().collect()
    }

    /// Number of elements of the given order.
    pub fn count_of_order(&self, ord: usize) -> usize {
        (0..self.n)
            .filter(|&a| self.element_order[a] as usize == ord)
            .count()
    }

    /// Distinct primes dividing `|G|`, ascending.
    pub fn primes(&self) -> Vec<usize> {
        crate::arith::prime_divisors(self.n)
    }
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Group")
            .field("name", &self.name)
            .field("order", &self.n)
            .finish()
    }
}
