//! Structural predicates used by the characterization checks.

use super::Group;
use crate::arith::factorize;

/// Verdict on subgroups of order `p`: whether there is exactly one, and
/// whether every element of order `p` is central.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UniqueOrderPSubgroup {
    pub unique: bool,
    pub central: bool,
}

impl Group {
    /// Generator witness of least id when the whole group is cyclic.
    pub fn cyclic_group_generator(&self) -> Option<usize> {
        (0..self.order()).find(|&a| self.elem_order(a) == self.order())
    }

    pub fn is_cyclic_group(&self) -> bool {
        self.cyclic_group_generator().is_some()
    }

    /// Whether `|G|` is a power of `p` (the trivial group counts).
    pub fn is_p_group(&self, p: usize) -> bool {
        let mut n = self.order();
        while n.is_multiple_of(p) {
            n /= p;
        }
        n == 1
    }

    /// Generalized quaternion: a non-cyclic 2-group of order at least 8 with
    /// exactly one involution (the standard classification of 2-groups with
    /// a unique involution).
    pub fn is_generalized_quaternion(&self) -> bool {
        self.order() >= 8
            && self.is_p_group(2)
            && self.count_of_order(2) == 1
            && !self.is_cyclic_group()
    }

    /// Subgroups of order `p`: unique iff the count of order-p elements is
    /// exactly `p - 1`; central iff every order-p element commutes with the
    /// whole group.
    pub fn unique_subgroup_of_order_p(&self, p: usize) -> UniqueOrderPSubgroup {
        let of_order_p: Vec<usize> = (0..self.order())
            .filter(|&a| self.elem_order(a) == p)
            .collect();
        let unique = of_order_p.len() == p - 1;
        let central = of_order_p
            .iter()
            .all(|&a| (0..self.order()).all(|x| self.mul_fast(a, x) == self.mul_fast(x, a)));
        UniqueOrderPSubgroup { unique, central }
    }

    /// Set-level cyclicity: some member's order equals the set size.
    /// Callers guarantee `s` is a subgroup.
    pub fn set_is_cyclic(&self, s: &crate::bitset::ElemSet) -> bool {
        let target = s.len();
        s.iter().any(|a| self.elem_order(a) == target)
    }

    /// Set-level generalized quaternion test for a subgroup: order `2^k >= 8`
    /// with exactly one involution and no generator.
    pub fn set_is_generalized_quaternion(&self, s: &crate::bitset::ElemSet) -> bool {
        let n = s.len();
        n >= 8
            && n.is_power_of_two()
            && s.iter().filter(|&a| self.elem_order(a) == 2).count() == 1
            && !self.set_is_cyclic(s)
    }

    /// Primes `p | |G|` such that G has a unique subgroup of order p and that
    /// subgroup is central. No graph is built.
    pub fn unique_central_prime_divisors(&self) -> Vec<usize> {
        factorize(self.order())
            .into_iter()
            .map(|(p, _)| p)
            .filter(|&p| {
                let u = self.unique_subgroup_of_order_p(p);
                u.unique && u.central
            })
            .collect()
    }
}
