//! Isomorphism testing and automorphism counting by backtracking over
//! generator images, with cheap invariant screening in front.

use super::{Group, GroupError, AUT_ORDER_CAP, ISO_ORDER_CAP};
use crate::bitset::ElemSet;

/// Isomorphism-class invariants that are cheap to compare. A mismatch proves
/// non-isomorphism; a match routes the pair into the backtracking search.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IsoInvariants {
    pub order: usize,
    /// Ascending (element order, count) pairs.
    pub spectrum: Vec<(usize, usize)>,
    pub center_order: usize,
    /// Ascending (class size, count) pairs.
    pub class_sizes: Vec<(usize, usize)>,
    pub derived_length: usize,
    pub solvable: bool,
}

/// Node budget for the backtracking searches; one unit per product checked.
#[derive(Clone, Copy, Debug)]
pub struct SearchBudget(pub u64);

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget(50_000_000)
    }
}

impl Group {
    pub fn iso_invariants(&self) -> IsoInvariants {
        let series = self.derived_series();
        IsoInvariants {
            order: self.order(),
            spectrum: self.order_census(),
            center_order: self.center().len(),
            class_sizes: self.conjugacy_classes().size_census(),
            derived_length: series.terms.len(),
            solvable: series.solvable,
        }
    }

    /// Greedy minimal generating sequence: each step adds the element that
    /// grows the generated subgroup the most (least id on ties).
    pub fn generating_sequence(&self) -> Vec<usize> {
        let mut sub = self.trivial_subgroup();
        let mut gens = Vec::new();
        while sub.len() < self.order() {
            let mut best_size = 0;
            let mut best = usize::MAX;
            for cand in 0..self.order() {
                if sub.contains(cand) {
                    continue;
                }
                let size = self.extend_subgroup(&sub, cand).len();
                if size > best_size {
                    best_size = size;
                    best = cand;
                }
            }
            sub = self.extend_subgroup(&sub, best);
            gens.push(best);
        }
        gens
    }
}

struct MapSearch<'a> {
    g: &'a Group,
    h: &'a Group,
    gens: Vec<usize>,
    g_class_size: Vec<usize>,
    h_class_size: Vec<usize>,
    /// Partial map G -> H; usize::MAX marks unassigned.
    img: Vec<usize>,
    used: ElemSet,
    mapped: Vec<usize>,
    budget: u64,
    spent: u64,
    /// Completed isomorphisms found so far.
    found: u64,
    stop_at_first: bool,
}

impl<'a> MapSearch<'a> {
    fn new(g: &'a Group, h: &'a Group, budget: SearchBudget, stop_at_first: bool) -> Self {
        let class_size = |grp: &Group| {
            let cc = grp.conjugacy_classes();
            (0..grp.order())
                .map(|a| cc.classes[cc.class_of[a]].len())
                .collect::<Vec<_>>()
        };
        let mut img = vec![usize::MAX; g.order()];
        img[0] = 0;
        let mut used = ElemSet::empty(h.order());
        used.insert(0);
        MapSearch {
            gens: g.generating_sequence(),
            g_class_size: class_size(g),
            h_class_size: class_size(h),
            g,
            h,
            img,
            used,
            mapped: vec![0],
            budget: budget.0,
            spent: 0,
            found: 0,
            stop_at_first,
        }
    }

    /// Assigns `img[x] = y` and closes the partial map under products,
    /// recording every assignment in `trail`. Returns false on any conflict
    /// (wrong product image or injectivity violation).
    fn assign_and_close(&mut self, x: usize, y: usize, trail: &mut Vec<usize>) -> Result<bool, GroupError> {
        debug_assert_eq!(self.img[x], usize::MAX);
        if self.used.contains(y) {
            return Ok(false);
        }
        self.img[x] = y;
        self.used.insert(y);
        self.mapped.push(x);
        trail.push(x);

        let mut head = self.mapped.len() - 1;
        while head < self.mapped.len() {
            let a = self.mapped[head];
            head += 1;
            for i in 0..self.mapped.len() {
                let b = self.mapped[i];
                self.spent += 2;
                if self.spent > self.budget {
                    return Err(GroupError::BudgetExhausted {
                        spent: self.spent,
                        budget: self.budget,
                    });
                }
                for (p, q) in [
                    (self.g.mul_fast(a, b), self.h.mul_fast(self.img[a], self.img[b])),
                    (self.g.mul_fast(b, a), self.h.mul_fast(self.img[b], self.img[a])),
                ] {
                    if self.img[p] == usize::MAX {
                        if self.used.contains(q) {
                            return Ok(false);
                        }
                        self.img[p] = q;
                        self.used.insert(q);
                        self.mapped.push(p);
                        trail.push(p);
                    } else if self.img[p] != q {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    fn rollback(&mut self, trail: &[usize]) {
        for &x in trail.iter().rev() {
            let y = self.img[x];
            self.img[x] = usize::MAX;
            self.used.remove(y);
            self.mapped.pop();
        }
    }

    fn search(&mut self, depth: usize) -> Result<(), GroupError> {
        if depth == self.gens.len() {
            debug_assert_eq!(self.mapped.len(), self.g.order());
            self.found += 1;
            return Ok(());
        }
        let gen = self.gens[depth];
        if self.img[gen] != usize::MAX {
            // Image already forced by the closure of earlier choices.
            return self.search(depth + 1);
        }
        let want_order = self.g.elem_order(gen);
        let want_class = self.g_class_size[gen];
        for cand in 0..self.h.order() {
            if self.used.contains(cand)
                || self.h.elem_order(cand) != want_order
                || self.h_class_size[cand] != want_class
            {
                continue;
            }
            let mut trail = Vec::new();
            let ok = self.assign_and_close(gen, cand, &mut trail)?;
            if ok {
                self.search(depth + 1)?;
                if self.found > 0 && self.stop_at_first {
                    return Ok(());
                }
            }
            self.rollback(&trail);
        }
        Ok(())
    }
}

/// Isomorphism test with the default order cap and budget.
///
/// `Ok(false)` is a definite negative; resource exhaustion is an error,
/// never a verdict.
pub fn is_isomorphic(g: &Group, h: &Group) -> Result<bool, GroupError> {
    if g.order() != h.order() {
        return Ok(false);
    }
    if g.order() > ISO_ORDER_CAP {
        return Err(GroupError::OpOrderCap {
            n: g.order(),
            cap: ISO_ORDER_CAP,
        });
    }
    is_isomorphic_with_budget(g, h, SearchBudget::default())
}

/// Isomorphism test without the order cap; catalog dedupe passes its own
/// budget here.
pub fn is_isomorphic_with_budget(
    g: &Group,
    h: &Group,
    budget: SearchBudget,
) -> Result<bool, GroupError> {
    if g.order() != h.order() {
        return Ok(false);
    }
    if g.iso_invariants() != h.iso_invariants() {
        return Ok(false);
    }
    let mut search = MapSearch::new(g, h, budget, true);
    search.search(0)?;
    Ok(search.found > 0)
}

/// Exact `|Aut(G)|` by counting every completed generator-image map that
/// closes into a bijective homomorphism.
pub fn automorphism_count(g: &Group) -> Result<u64, GroupError> {
    automorphism_count_with_budget(g, SearchBudget::default())
}

pub fn automorphism_count_with_budget(
    g: &Group,
    budget: SearchBudget,
) -> Result<u64, GroupError> {
    if g.order() > AUT_ORDER_CAP {
        return Err(GroupError::OpOrderCap {
            n: g.order(),
            cap: AUT_ORDER_CAP,
        });
    }
    let mut search = MapSearch::new(g, g, budget, false);
    search.search(0)?;
    Ok(search.found)
}
