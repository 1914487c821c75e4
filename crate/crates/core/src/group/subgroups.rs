//! Subgroup machinery: closures, centralizers, conjugacy, normal subgroups,
//! Sylow theory, complements, quotients and the derived series.

use super::{Group, GroupError};
use crate::arith::{is_prime, p_part, p_prime_part};
use crate::bitset::ElemSet;
use std::collections::HashSet;

/// Default cap on how many normal subgroups `normal_subgroups` will
/// enumerate before giving up. Elementary abelian groups blow up first;
/// 2^6 has 2825 subgroups and 2^7 already has 29212.
pub const NORMAL_SUBGROUP_BOUND: usize = 20_000;

/// Conjugacy classes of a group, ordered by least member id.
#[derive(Clone, Debug)]
pub struct ConjClasses {
    pub classes: Vec<ElemSet>,
    /// `class_of[a]` indexes into `classes`.
    pub class_of: Vec<usize>,
}

impl ConjClasses {
    /// Class sizes as ascending `(size, count)` pairs.
    pub fn size_census(&self) -> Vec<(usize, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for c in &self.classes {
            *counts.entry(c.len()).or_insert(0usize) += 1;
        }
        counts.into_iter().collect()
    }
}

/// A quotient group together with the projection map onto coset ids.
pub struct Quotient {
    pub group: Group,
    /// `projection[g]` is the id of the coset of `g` in the quotient.
    pub projection: Vec<usize>,
}

/// The derived series `G >= G' >= G'' >= ...` down to stabilization.
pub struct DerivedSeries {
    pub terms: Vec<ElemSet>,
    pub solvable: bool,
}

impl Group {
    /// The trivial subgroup `{1}`.
    pub fn trivial_subgroup(&self) -> ElemSet {
        ElemSet::singleton(self.n, 0)
    }

    /// The whole group as an element set.
    pub fn full_set(&self) -> ElemSet {
        ElemSet::full(self.n)
    }

    /// Extends a subgroup by one element: `<S, g>`.
    ///
    /// Walks the coset graph of `S` instead of re-closing from scratch, so
    /// the cost is linear in the size of the result.
    pub fn extend_subgroup(&self, s: &ElemSet, g: usize) -> ElemSet {
        debug_assert!(g < self.n);
        if s.contains(g) {
            return s.clone();
        }
        let base: Vec<usize> = s.iter().collect();
        let mut members = s.clone();
        let mut reps = vec![0usize];
        let mut head = 0;
        while head < reps.len() {
            let r = reps[head];
            head += 1;
            // Children of coset S*r under right multiplication by g and by
            // the members of S.
            let try_rep = |cand: usize, members: &mut ElemSet, reps: &mut Vec<usize>| {
                if !members.contains(cand) {
                    for &b in &base {
                        members.insert(self.mul_fast(b, cand));
                    }
                    reps.push(cand);
                }
            };
            try_rep(self.mul_fast(r, g), &mut members, &mut reps);
            for &b in &base {
                try_rep(self.mul_fast(r, b), &mut members, &mut reps);
            }
        }
        members
    }

    /// Least subgroup containing `seed` (the identity is always included).
    pub fn generated_subgroup(&self, seed: &ElemSet) -> ElemSet {
        let mut s = self.trivial_subgroup();
        for g in seed.iter() {
            s = self.extend_subgroup(&s, g);
        }
        s
    }

    /// Cyclic subgroup `<a>`.
    pub fn cyclic_subgroup(&self, a: usize) -> ElemSet {
        let mut s = ElemSet::singleton(self.n, 0);
        let mut x = a;
        while x != 0 {
            s.insert(x);
            x = self.mul_fast(x, a);
        }
        s
    }

    /// Checks closure under products and inverses, with the identity present.
    pub fn is_subgroup(&self, s: &ElemSet) -> bool {
        if !s.contains(0) {
            return false;
        }
        let members: Vec<usize> = s.iter().collect();
        members.iter().all(|&a| s.contains(self.inv(a)))
            && members
                .iter()
                .all(|&a| members.iter().all(|&b| s.contains(self.mul_fast(a, b))))
    }

    /// Whether `s` (a subgroup) is normal: closed under conjugation.
    pub fn is_normal(&self, s: &ElemSet) -> bool {
        (0..self.n).all(|g| s.iter().all(|x| s.contains(self.conj(g, x))))
    }

    /// Cyclicity test for a subgroup: some member has order `|S|`.
    /// Returns a generator witness (least id) when cyclic.
    pub fn cyclic_generator(&self, s: &ElemSet) -> Result<Option<usize>, GroupError> {
        if !self.is_subgroup(s) {
            return Err(GroupError::NotASubgroup);
        }
        let target = s.len();
        Ok(s.iter().find(|&a| self.elem_order(a) == target))
    }

    /// The center `Z(G)`.
    pub fn center(&self) -> ElemSet {
        let mut z = ElemSet::empty(self.n);
        for g in 0..self.n {
            if (0..self.n).all(|x| self.mul_fast(g, x) == self.mul_fast(x, g)) {
                z.insert(g);
            }
        }
        z
    }

    /// Centralizer of a set: all elements commuting with every member.
    pub fn centralizer(&self, s: &ElemSet) -> ElemSet {
        let members: Vec<usize> = s.iter().collect();
        let mut c = ElemSet::empty(self.n);
        for g in 0..self.n {
            if members
                .iter()
                .all(|&x| self.mul_fast(g, x) == self.mul_fast(x, g))
            {
                c.insert(g);
            }
        }
        c
    }

    /// Normalizer of a subgroup: `{g : g S g^-1 = S}`.
    pub fn normalizer(&self, s: &ElemSet) -> ElemSet {
        let members: Vec<usize> = s.iter().collect();
        let mut nz = ElemSet::empty(self.n);
        for g in 0..self.n {
            if members.iter().all(|&x| s.contains(self.conj(g, x))) {
                nz.insert(g);
            }
        }
        nz
    }

    /// Orbits of the conjugation action, ordered by least member.
    pub fn conjugacy_classes(&self) -> ConjClasses {
        let mut class_of = vec![usize::MAX; self.n];
        let mut classes = Vec::new();
        for a in 0..self.n {
            if class_of[a] != usize::MAX {
                continue;
            }
            let idx = classes.len();
            let mut class = ElemSet::empty(self.n);
            for g in 0..self.n {
                class.insert(self.conj(g, a));
            }
            for x in class.iter() {
                class_of[x] = idx;
            }
            classes.push(class);
        }
        ConjClasses { classes, class_of }
    }

    /// Normal closure `<<a>>`: the subgroup generated by the class of `a`.
    pub fn normal_closure(&self, a: usize) -> ElemSet {
        let mut class = ElemSet::empty(self.n);
        for g in 0..self.n {
            class.insert(self.conj(g, a));
        }
        self.generated_subgroup(&class)
    }

    /// Product set `N * M` of two subgroups; a subgroup whenever one of the
    /// factors is normal.
    pub fn product_set(&self, a: &ElemSet, b: &ElemSet) -> ElemSet {
        let mut out = ElemSet::empty(self.n);
        for x in a.iter() {
            for y in b.iter() {
                out.insert(self.mul_fast(x, y));
            }
        }
        out
    }

    /// All normal subgroups, as the join-closure of the element normal
    /// closures. Every normal subgroup is the join of the normal closures of
    /// its elements, and the join of two normal subgroups is their product
    /// set, so a worklist over products reaches everything.
    ///
    /// Sorted by order, then by member list. Errors out when the enumeration
    /// exceeds `bound`.
    pub fn normal_subgroups_bounded(&self, bound: usize) -> Result<Vec<ElemSet>, GroupError> {
        let mut gens: Vec<ElemSet> = Vec::new();
        let mut seen_gen: HashSet<ElemSet> = HashSet::new();
        for a in 0..self.n {
            let c = self.normal_closure(a);
            if seen_gen.insert(c.clone()) {
                gens.push(c);
            }
        }

        let mut found: HashSet<ElemSet> = HashSet::new();
        let mut work: Vec<ElemSet> = Vec::new();
        let trivial = self.trivial_subgroup();
        found.insert(trivial.clone());
        work.push(trivial);
        while let Some(cur) = work.pop() {
            for g in &gens {
                if g.is_subset_of(&cur) {
                    continue;
                }
                let join = self.product_set(&cur, g);
                if !found.contains(&join) {
                    if found.len() >= bound {
                        return Err(GroupError::ResourceBound { bound });
                    }
                    found.insert(join.clone());
                    work.push(join);
                }
            }
        }

        let mut out: Vec<ElemSet> = found.into_iter().collect();
        out.sort_by_key(|a| (a.len(), a.to_vec()));
        Ok(out)
    }

    pub fn normal_subgroups(&self) -> Result<Vec<ElemSet>, GroupError> {
        self.normal_subgroups_bounded(NORMAL_SUBGROUP_BOUND)
    }

    /// Largest normal subgroup of order coprime to `p` (the p'-core).
    ///
    /// Joins of normal p'-subgroups stay normal p'-subgroups, so folding the
    /// product over every element normal closure of coprime order reaches
    /// the unique maximum without enumerating the normal subgroup lattice.
    pub fn p_prime_core(&self, p: usize) -> Result<ElemSet, GroupError> {
        if !is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        let mut core = self.trivial_subgroup();
        for a in 0..self.n {
            if core.contains(a) || self.elem_order(a).is_multiple_of(p) {
                continue;
            }
            let closure = self.normal_closure(a);
            if !closure.len().is_multiple_of(p) {
                core = self.product_set(&core, &closure);
            }
        }
        Ok(core)
    }

    /// A Sylow p-subgroup, by normalizer ascent: start from a cyclic
    /// p-subgroup of maximal order and extend inside the normalizer until
    /// the full p-part is reached.
    pub fn sylow(&self, p: usize) -> Result<ElemSet, GroupError> {
        if !is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        let target = p_part(self.n, p);
        if target == 1 {
            return Ok(self.trivial_subgroup());
        }

        // Seed: element whose order is the largest power of p seen.
        let seed = (0..self.n)
            .filter(|&a| {
                let o = self.elem_order(a);
                o > 1 && p_prime_part(o, p) == 1
            })
            .max_by_key(|&a| (self.elem_order(a), std::cmp::Reverse(a)))
            .expect("Cauchy: p | |G| guarantees a p-element");
        let mut sub = self.cyclic_subgroup(seed);

        while sub.len() < target {
            let normalizer = self.normalizer(&sub);
            let mut extended = false;
            for g in normalizer.iter() {
                if sub.contains(g) {
                    continue;
                }
                // p-part of g: g^(p'-part of its order).
                let h = self.pow(g, p_prime_part(self.elem_order(g), p) as i64);
                if h != 0 && !sub.contains(h) {
                    sub = self.extend_subgroup(&sub, h);
                    extended = true;
                    break;
                }
            }
            // A proper p-subgroup always has a p-element in its normalizer
            // outside itself; a stall here means the kernel is broken.
            assert!(
                extended,
                "sylow ascent stalled at order {} of target {} in {}",
                sub.len(),
                target,
                self.name
            );
        }
        debug_assert_eq!(sub.len(), target);
        Ok(sub)
    }

    /// The normal p-complement, if one exists.
    ///
    /// The set of p'-elements is the only candidate: a normal subgroup of
    /// order `|G|_p'` contains every p'-element and nothing else. So the
    /// complement exists exactly when that set is product-closed.
    pub fn normal_p_complement(&self, p: usize) -> Result<Option<ElemSet>, GroupError> {
        if !is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        let mut s = ElemSet::empty(self.n);
        for a in 0..self.n {
            if !self.elem_order(a).is_multiple_of(p) {
                s.insert(a);
            }
        }
        let members: Vec<usize> = s.iter().collect();
        for &a in &members {
            for &b in &members {
                if !s.contains(self.mul_fast(a, b)) {
                    return Ok(None);
                }
            }
        }
        debug_assert_eq!(s.len(), p_prime_part(self.n, p));
        Ok(Some(s))
    }

    /// Quotient `G/N` with cosets labeled by least member and the identity
    /// coset renumbered to 0.
    pub fn quotient(&self, nsub: &ElemSet) -> Result<Quotient, GroupError> {
        if !self.is_subgroup(nsub) {
            return Err(GroupError::NotASubgroup);
        }
        if !self.is_normal(nsub) {
            return Err(GroupError::NotNormal);
        }

        let mut coset_of = vec![usize::MAX; self.n];
        let mut reps: Vec<usize> = Vec::new();
        for g in 0..self.n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            // Ascending scan: g is the least member of its coset.
            let idx = reps.len();
            for x in nsub.iter() {
                coset_of[self.mul_fast(g, x)] = idx;
            }
            reps.push(g);
        }

        let q = reps.len();
        debug_assert_eq!(q * nsub.len(), self.n);
        let mut table = vec![0u16; q * q];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * q + j] = coset_of[self.mul_fast(a, b)] as u16;
            }
        }
        let group = Group::from_flat_table(table, q, format!("{}/{}", self.name, nsub.len()))?;
        Ok(Quotient {
            group,
            projection: coset_of,
        })
    }

    /// Extracts a subgroup as a standalone group, relabeling members in
    /// ascending id order (the identity stays at 0).
    pub fn subgroup_group(&self, s: &ElemSet) -> Result<Group, GroupError> {
        if !self.is_subgroup(s) {
            return Err(GroupError::NotASubgroup);
        }
        let members: Vec<usize> = s.iter().collect();
        let mut local = vec![usize::MAX; self.n];
        for (i, &m) in members.iter().enumerate() {
            local[m] = i;
        }
        let k = members.len();
        let mut table = vec![0u16; k * k];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                table[i * k + j] = local[self.mul_fast(a, b)] as u16;
            }
        }
        Group::from_flat_table(table, k, format!("{}<{}", self.name, k))
    }

    /// Commutator subgroup of a subgroup (as an element set).
    pub fn derived_subgroup(&self, s: &ElemSet) -> ElemSet {
        let members: Vec<usize> = s.iter().collect();
        let mut seed = ElemSet::empty(self.n);
        for &a in &members {
            for &b in &members {
                seed.insert(self.commutator(a, b));
            }
        }
        self.generated_subgroup(&seed)
    }

    /// Derived series down to stabilization; solvable iff it hits `{1}`.
    pub fn derived_series(&self) -> DerivedSeries {
        let mut terms = vec![self.full_set()];
        loop {
            let next = self.derived_subgroup(terms.last().unwrap());
            if &next == terms.last().unwrap() {
                break;
            }
            terms.push(next);
            if terms.last().unwrap().len() == 1 {
                break;
            }
        }
        let solvable = terms.last().unwrap().len() == 1;
        DerivedSeries { terms, solvable }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().solvable
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        cyclic, dicyclic, direct_product, elementary_abelian, matrix_group, symmetric, MatrixKind,
    };

    fn c3_x_q8() -> Group {
        direct_product(&cyclic(3).unwrap(), &dicyclic(8).unwrap()).unwrap()
    }

    #[test]
    fn element_ops_on_c4() {
        let g = cyclic(4).unwrap();
        assert_eq!(g.elem_order(1), 4);
        assert_eq!(g.elem_order(g.pow(1, 2)), 2);
        assert_eq!(g.elem_order(0), 1);
        assert_eq!(g.pow(1, -1), g.inv(1));
    }

    #[test]
    fn generated_subgroup_examples() {
        let s3 = symmetric(3).unwrap();
        let transposition = (0..6).find(|&a| s3.elem_order(a) == 2).unwrap();
        let three_cycle = (0..6).find(|&a| s3.elem_order(a) == 3).unwrap();
        let sub = s3.generated_subgroup(&ElemSet::from_iter(6, [transposition, three_cycle]));
        assert_eq!(sub.len(), 6);

        let q8 = dicyclic(8).unwrap();
        // Two order-4 elements that are not powers of each other.
        let i = (1..8).find(|&a| q8.elem_order(a) == 4).unwrap();
        let j = (1..8)
            .find(|&a| q8.elem_order(a) == 4 && !q8.cyclic_subgroup(i).contains(a))
            .unwrap();
        assert_eq!(q8.generated_subgroup(&ElemSet::from_iter(8, [i, j])).len(), 8);

        // The identity alone generates the trivial subgroup.
        let trivial = s3.generated_subgroup(&ElemSet::singleton(6, 0));
        assert_eq!(trivial.len(), 1);
    }

    #[test]
    fn cyclic_generator_examples() {
        let c6 = cyclic(6).unwrap();
        let witness = c6.cyclic_generator(&c6.full_set()).unwrap();
        assert_eq!(witness.map(|w| c6.elem_order(w)), Some(6));

        let klein = elementary_abelian(2, 2).unwrap();
        assert_eq!(klein.cyclic_generator(&klein.full_set()).unwrap(), None);

        let q8 = dicyclic(8).unwrap();
        assert_eq!(q8.cyclic_generator(&q8.full_set()).unwrap(), None);
        for m in crate::epgraph::maximal_cyclic_subgroups(&q8) {
            assert!(q8.cyclic_generator(&m).unwrap().is_some());
        }

        // A non-subgroup input is rejected.
        let not_subgroup = ElemSet::from_iter(8, [1, 2]);
        assert!(matches!(
            q8.cyclic_generator(&not_subgroup),
            Err(GroupError::NotASubgroup)
        ));
    }

    #[test]
    fn center_of_sl2_3_has_order_two() {
        let g = matrix_group(MatrixKind::Sl2, 3).unwrap();
        assert_eq!(g.center().len(), 2);
    }

    #[test]
    fn conjugacy_class_examples() {
        // Abelian: all classes singletons.
        let c5 = cyclic(5).unwrap();
        assert!(c5.conjugacy_classes().classes.iter().all(|c| c.len() == 1));

        let s3 = symmetric(3).unwrap();
        let mut sizes: Vec<usize> = s3.conjugacy_classes().classes.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);

        let q8 = dicyclic(8).unwrap();
        let mut sizes: Vec<usize> = q8.conjugacy_classes().classes.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
    }

    #[test]
    fn normal_subgroup_counts() {
        assert_eq!(symmetric(3).unwrap().normal_subgroups().unwrap().len(), 3);
        assert_eq!(dicyclic(8).unwrap().normal_subgroups().unwrap().len(), 6);
        assert_eq!(cyclic(4).unwrap().normal_subgroups().unwrap().len(), 3);
    }

    #[test]
    fn p_prime_core_examples() {
        let sl23 = matrix_group(MatrixKind::Sl2, 3).unwrap();
        assert_eq!(sl23.p_prime_core(2).unwrap().len(), 1);

        let g = c3_x_q8();
        let core = g.p_prime_core(2).unwrap();
        assert_eq!(core.len(), 3);
        assert!(core.iter().all(|a| !g.elem_order(a).is_multiple_of(2)));

        // The p'-core of a p-group is trivial.
        assert_eq!(dicyclic(16).unwrap().p_prime_core(2).unwrap().len(), 1);
        assert!(matches!(
            sl23.p_prime_core(4),
            Err(GroupError::NotPrime(4))
        ));
    }

    #[test]
    fn sylow_examples() {
        let s3 = symmetric(3).unwrap();
        let sylow3 = s3.sylow(3).unwrap();
        assert_eq!(sylow3.len(), 3);
        assert!(sylow3.iter().all(|a| a == 0 || s3.elem_order(a) == 3));

        // Abelian: the Sylow p-subgroup is exactly the p-power-order elements.
        let c12 = cyclic(12).unwrap();
        let sylow2 = c12.sylow(2).unwrap();
        let expected = ElemSet::from_iter(
            12,
            (0..12).filter(|&a| [1usize, 2, 4].contains(&c12.elem_order(a))),
        );
        assert_eq!(sylow2, expected);
    }

    #[test]
    fn normal_p_complement_examples() {
        let s3 = symmetric(3).unwrap();
        let a3 = s3.normal_p_complement(2).unwrap().expect("A3 complements");
        assert_eq!(a3.len(), 3);
        assert!(s3.normal_p_complement(3).unwrap().is_none());

        let g = c3_x_q8();
        let c3 = g.normal_p_complement(2).unwrap().expect("C3 complements");
        assert_eq!(c3.len(), 3);
    }

    #[test]
    fn quotient_examples() {
        let s3 = symmetric(3).unwrap();
        let a3 = s3.normal_p_complement(2).unwrap().unwrap();
        let q = s3.quotient(&a3).unwrap();
        assert_eq!(q.group.order(), 2);

        // Q8 over its center is the Klein four-group: order 4, exponent 2.
        let q8 = dicyclic(8).unwrap();
        let quotient = q8.quotient(&q8.center()).unwrap();
        assert_eq!(quotient.group.order(), 4);
        assert!((1..4).all(|a| quotient.group.elem_order(a) == 2));

        let whole = q8.quotient(&q8.full_set()).unwrap();
        assert_eq!(whole.group.order(), 1);

        // Non-normal subgroups are rejected: a single reflection in S3.
        let reflection = (0..6).find(|&a| s3.elem_order(a) == 2).unwrap();
        let sub = s3.cyclic_subgroup(reflection);
        assert!(matches!(s3.quotient(&sub), Err(GroupError::NotNormal)));
    }

    #[test]
    fn derived_series_of_s3() {
        let series = symmetric(3).unwrap().derived_series();
        let sizes: Vec<usize> = series.terms.iter().map(|t| t.len()).collect();
        assert_eq!(sizes, vec![6, 3, 1]);
        assert!(series.solvable);
    }
}
