//! Cross-cutting invariants checked exhaustively over the generated catalog.

use epg_core::arith::{p_part, p_prime_part};
use epg_core::constructions::{self, dicyclic, MatrixKind};
use epg_core::epgraph::{self, Diameter, EpGraph, KMethod};
use epg_core::group::{is_isomorphic, Group, GroupError};
use epg_core::selftest::catalog_up_to;
use epg_core::ElemSet;

/// Independent re-check of the group axioms against the public API:
/// identity at 0, Latin rows and columns, associativity (exhaustive to
/// order 64, 10^4 deterministic samples above).
#[test]
fn axiom_suite_over_catalog() {
    for e in catalog_up_to(96).iter() {
        let g = &e.group;
        let n = g.order();
        for a in 0..n {
            assert_eq!(g.mul(0, a), a, "{}: left identity", g.name());
            assert_eq!(g.mul(a, 0), a, "{}: right identity", g.name());
            assert_eq!(g.mul(a, g.inv(a)), 0, "{}: inverse", g.name());
        }
        for a in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                assert!(!row[g.mul(a, b)], "{}: row {a} repeats", g.name());
                row[g.mul(a, b)] = true;
                assert!(!col[g.mul(b, a)], "{}: col {a} repeats", g.name());
                col[g.mul(b, a)] = true;
            }
        }
        let check = |a: usize, b: usize, c: usize| {
            assert_eq!(
                g.mul(g.mul(a, b), c),
                g.mul(a, g.mul(b, c)),
                "{}: associativity at ({a},{b},{c})",
                g.name()
            );
        };
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c);
                    }
                }
            }
        } else {
            let mut state = 0x243f6a8885a308d3u64 ^ n as u64;
            let mut next = move || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state % n as u64) as usize
            };
            for _ in 0..10_000 {
                check(next(), next(), next());
            }
        }
    }
}

#[test]
fn conjugacy_class_sizes_partition_the_order() {
    for e in catalog_up_to(96).iter() {
        let g = &e.group;
        let cc = g.conjugacy_classes();
        let total: usize = cc.classes.iter().map(|c| c.len()).sum();
        assert_eq!(total, g.order(), "{}", g.name());
        assert_eq!(cc.classes[0].to_vec(), vec![0], "{}", g.name());
        for c in &cc.classes {
            assert_eq!(g.order() % c.len(), 0, "{}: class size divides", g.name());
            let orders: Vec<usize> = c.iter().map(|x| g.elem_order(x)).collect();
            assert!(
                orders.windows(2).all(|w| w[0] == w[1]),
                "{}: class mixes element orders",
                g.name()
            );
        }
        for (a, &cls) in cc.class_of.iter().enumerate() {
            assert!(cc.classes[cls].contains(a));
        }
    }
}

#[test]
fn sylow_subgroups_have_the_full_p_part() {
    for e in catalog_up_to(96).iter() {
        let g = &e.group;
        for p in g.primes() {
            let s = g.sylow(p).unwrap();
            assert_eq!(s.len(), p_part(g.order(), p), "{} p={p}", g.name());
            assert!(
                s.iter().all(|a| p_prime_part(g.elem_order(a), p) == 1),
                "{} p={p}: non-p-element in Sylow subgroup",
                g.name()
            );
            assert!(g.is_subgroup(&s));
        }
        // p coprime to the order yields the trivial subgroup.
        let coprime = [2usize, 3, 5, 7, 11, 13]
            .into_iter()
            .find(|&p| g.order() % p != 0)
            .unwrap();
        assert_eq!(g.sylow(coprime).unwrap().len(), 1);
    }
}

#[test]
fn p_prime_core_is_the_largest_normal_coprime_subgroup() {
    for e in catalog_up_to(96).iter() {
        let g = &e.group;
        let normals = match g.normal_subgroups() {
            Ok(n) => n,
            Err(GroupError::ResourceBound { .. }) => continue,
            Err(other) => panic!("{}: {other}", g.name()),
        };
        for p in [2usize, 3, 5, 7] {
            let core = g.p_prime_core(p).unwrap();
            assert!(g.is_subgroup(&core), "{} p={p}", g.name());
            assert!(g.is_normal(&core), "{} p={p}", g.name());
            assert_ne!(core.len() % p, 0, "{} p={p}: core order not coprime", g.name());
            let max_coprime = normals
                .iter()
                .filter(|n| n.len() % p != 0)
                .max_by_key(|n| n.len())
                .unwrap();
            assert_eq!(
                core.len(),
                max_coprime.len(),
                "{} p={p}: core order mismatch",
                g.name()
            );
            assert_eq!(&core, max_coprime, "{} p={p}: core set mismatch", g.name());
        }
    }
}

#[test]
fn normal_p_complement_cross_checks_against_the_lattice() {
    for e in catalog_up_to(96).iter() {
        let g = &e.group;
        let normals = match g.normal_subgroups() {
            Ok(n) => n,
            Err(GroupError::ResourceBound { .. }) => continue,
            Err(other) => panic!("{}: {other}", g.name()),
        };
        for p in [2usize, 3, 5, 7] {
            let complement = g.normal_p_complement(p).unwrap();
            let target = p_prime_part(g.order(), p);
            let from_lattice = normals.iter().find(|n| n.len() == target);
            match (complement, from_lattice) {
                (Some(c), Some(n)) => {
                    assert_eq!(&c, n, "{} p={p}: complement differs", g.name())
                }
                (None, None) => {}
                (Some(_), None) => panic!("{} p={p}: complement not in lattice", g.name()),
                (None, Some(n)) => panic!(
                    "{} p={p}: lattice has a normal subgroup of order {} but no complement found",
                    g.name(),
                    n.len()
                ),
            }
        }
    }
}

#[test]
fn quotient_projection_is_a_homomorphism() {
    for e in catalog_up_to(48).iter() {
        let g = &e.group;
        let normals = match g.normal_subgroups() {
            Ok(n) => n,
            Err(_) => continue,
        };
        for nsub in &normals {
            let q = g.quotient(nsub).unwrap();
            assert_eq!(q.group.order() * nsub.len(), g.order(), "{}", g.name());
            for a in 0..g.order() {
                for b in 0..g.order() {
                    assert_eq!(
                        q.projection[g.mul(a, b)],
                        q.group.mul(q.projection[a], q.projection[b]),
                        "{}: projection not multiplicative at ({a},{b})",
                        g.name()
                    );
                }
            }
        }
    }
}

#[test]
fn derived_series_terms_are_normal_with_abelian_quotients() {
    for e in catalog_up_to(96).iter() {
        let g = &e.group;
        let series = g.derived_series();
        assert_eq!(series.terms[0].len(), g.order());
        for w in series.terms.windows(2) {
            let (prev, next) = (&w[0], &w[1]);
            assert!(next.is_subset_of(prev), "{}", g.name());
            assert!(g.is_normal(next), "{}: term not normal", g.name());
            // Abelian quotient: commutators of the previous term land in the
            // next one.
            for a in prev.iter() {
                for b in prev.iter() {
                    assert!(
                        next.contains(g.commutator(a, b)),
                        "{}: quotient not abelian",
                        g.name()
                    );
                }
            }
        }
        assert_eq!(series.solvable, series.terms.last().unwrap().len() == 1);
    }
}

#[test]
fn isomorphism_is_reflexive_and_symmetric() {
    let entries = catalog_up_to(64);
    for e in entries.iter() {
        assert!(
            is_isomorphic(&e.group, &e.group).unwrap(),
            "{}: not isomorphic to itself",
            e.group.name()
        );
    }
    // Symmetry across all same-order pairs.
    for (i, a) in entries.iter().enumerate() {
        for b in entries.iter().skip(i + 1) {
            if a.group.order() != b.group.order() {
                continue;
            }
            let ab = is_isomorphic(&a.group, &b.group).unwrap();
            let ba = is_isomorphic(&b.group, &a.group).unwrap();
            assert_eq!(ab, ba, "{} vs {}", a.group.name(), b.group.name());
            // Catalog entries are deduped, so survivors must be distinct.
            assert!(!ab, "{} and {} survived dedupe", a.group.name(), b.group.name());
        }
    }
}

#[test]
fn iso_invariant_mismatch_implies_non_isomorphic() {
    let entries = catalog_up_to(48);
    for (i, a) in entries.iter().enumerate() {
        for b in entries.iter().skip(i + 1) {
            if a.invariant_key != b.invariant_key {
                assert!(
                    !is_isomorphic(&a.group, &b.group).unwrap(),
                    "{} vs {}",
                    a.group.name(),
                    b.group.name()
                );
            }
        }
    }
}

/// The structural test for "p divides |K(G)|" agrees with the graph-side
/// computation on every catalog group.
#[test]
fn unique_central_subgroup_iff_p_divides_k() {
    for e in catalog_up_to(96).iter() {
        let g = &e.group;
        let k = epgraph::k_subgroup(g, KMethod::Intersection);
        for p in g.primes() {
            let u = g.unique_subgroup_of_order_p(p);
            assert_eq!(
                u.unique && u.central,
                k.order.is_multiple_of(p),
                "{} p={p}",
                g.name()
            );
        }
    }
}

#[test]
fn k_facts_and_method_agreement() {
    for e in catalog_up_to(96).iter() {
        let g = &e.group;
        let ku = epgraph::k_subgroup(g, KMethod::Universal);
        let ki = epgraph::k_subgroup(g, KMethod::Intersection);
        assert_eq!(ku.members, ki.members, "{}", g.name());
        assert!(g.is_subgroup(&ku.members), "{}", g.name());
        assert!(ku.members.is_subset_of(&g.center()), "{}", g.name());
        assert!(ku.members.contains(0));
        let q = g.quotient(&ku.members).unwrap();
        assert_eq!(
            epgraph::k_subgroup(&q.group, KMethod::Intersection).order,
            1,
            "{}: K of the quotient by K is nontrivial",
            g.name()
        );
    }
}

#[test]
fn adjacency_equals_closure_oracle_up_to_64() {
    for e in catalog_up_to(64).iter() {
        let g = &e.group;
        if g.order() < 2 {
            continue;
        }
        let graph = EpGraph::build(g).unwrap();
        for x in 1..g.order() {
            for y in (x + 1)..g.order() {
                let direct = {
                    let sub = g.generated_subgroup(&ElemSet::from_iter(g.order(), [x, y]));
                    g.set_is_cyclic(&sub)
                };
                assert_eq!(graph.adjacent(x, y), direct, "{} ({x},{y})", g.name());
            }
        }
    }
}

#[test]
fn diameter_bounds_follow_k_and_cyclicity() {
    for e in catalog_up_to(96).iter() {
        let g = &e.group;
        if g.order() < 2 {
            continue;
        }
        let graph = EpGraph::build(g).unwrap();
        let diam = graph.diameter();
        let k = epgraph::k_subgroup(g, KMethod::Intersection);
        if k.order > 1 && !g.is_cyclic_group() {
            assert!(
                matches!(diam, Diameter::Finite(d) if d <= 2),
                "{}: K > 1 but diameter {diam}",
                g.name()
            );
        }
        let small = matches!(diam, Diameter::Finite(d) if d <= 1);
        assert_eq!(
            small,
            g.is_cyclic_group() || g.order() == 2,
            "{}: diameter <= 1 iff cyclic",
            g.name()
        );
    }
}

#[test]
fn dicyclic_two_power_families_have_one_central_involution() {
    for order in [8usize, 16, 32] {
        let g = dicyclic(order).unwrap();
        let involutions: Vec<usize> =
            (0..g.order()).filter(|&a| g.elem_order(a) == 2).collect();
        assert_eq!(involutions.len(), 1);
        let z = g.center();
        assert_eq!(z.len(), 2);
        assert!(z.contains(involutions[0]));
    }
}

#[test]
fn tilde_construction_contains_sl2_3_at_index_two() {
    let tilde = constructions::gl2_3_tilde();
    assert_eq!(tilde.center().len(), 2);
    // The derived subgroup is the index-2 copy of SL2(3).
    let derived = tilde.derived_subgroup(&tilde.full_set());
    assert_eq!(derived.len(), 24);
    let derived_group = tilde.subgroup_group(&derived).unwrap();
    let sl23 = constructions::matrix_group(MatrixKind::Sl2, 3).unwrap();
    assert!(is_isomorphic(&derived_group, &sl23).unwrap());
    // And it is a different order-48 group from GL2(3) and C2 x S4.
    let gl23 = constructions::matrix_group(MatrixKind::Gl2, 3).unwrap();
    assert!(!is_isomorphic(&tilde, &gl23).unwrap());
    let c2_s4 = constructions::direct_product(
        &constructions::cyclic(2).unwrap(),
        &constructions::symmetric(4).unwrap(),
    )
    .unwrap();
    assert!(!is_isomorphic(&tilde, &c2_s4).unwrap());
}

#[test]
fn catalog_dedupe_never_merges_distinct_keys() {
    // Dedupe compares only within an invariant-key bucket; distinct keys
    // must both survive. Verified indirectly: every surviving pair of equal
    // order is non-isomorphic (see isomorphism_is_reflexive_and_symmetric)
    // and every absorbed name lands in some provenance.
    let entries = catalog_up_to(24);
    let mut absorbed = 0usize;
    for e in entries.iter() {
        absorbed += e.provenance.matches("isomorphic:").count();
    }
    assert!(absorbed > 0, "expected at least one dedupe merge by order 24");
}

#[test]
fn sl2_3_and_sl2_5_have_quaternion_sylow_2() {
    for q in [3usize, 5] {
        let g = constructions::matrix_group(MatrixKind::Sl2, q).unwrap();
        let s = g.sylow(2).unwrap();
        assert_eq!(s.len(), 8, "SL2({q})");
        assert!(g.set_is_generalized_quaternion(&s), "SL2({q})");
        let sub = g.subgroup_group(&s).unwrap();
        assert!(is_isomorphic(&sub, &dicyclic(8).unwrap()).unwrap(), "SL2({q})");
    }
}

#[test]
fn gl2_3_sylow_2_is_not_quaternion() {
    let g = constructions::matrix_group(MatrixKind::Gl2, 3).unwrap();
    let s = g.sylow(2).unwrap();
    assert_eq!(s.len(), 16);
    assert!(!g.set_is_generalized_quaternion(&s));
}

/// Brute-force automorphism counting: enumerate every permutation of the
/// non-identity elements and test the homomorphism property directly.
/// Independent of the generator-image backtracking it cross-checks.
fn automorphism_count_by_enumeration(g: &Group) -> u64 {
    let n = g.order();
    let mut image: Vec<usize> = (0..n).collect();
    let mut count = 0u64;
    loop {
        let is_hom = (0..n).all(|a| (0..n).all(|b| image[g.mul(a, b)] == g.mul(image[a], image[b])));
        if is_hom {
            count += 1;
        }
        // Next permutation of image[1..]; image[0] stays 0 since any
        // automorphism fixes the identity.
        let tail = &mut image[1..];
        let Some(i) = (0..tail.len().saturating_sub(1)).rev().find(|&i| tail[i] < tail[i + 1])
        else {
            break;
        };
        let j = (i + 1..tail.len()).rev().find(|&j| tail[j] > tail[i]).unwrap();
        tail.swap(i, j);
        tail[i + 1..].reverse();
    }
    count
}

#[test]
fn automorphism_counts_match_exhaustive_enumeration() {
    for e in catalog_up_to(8).iter() {
        let g = &e.group;
        let expected = automorphism_count_by_enumeration(g);
        let got = epg_core::group::automorphism_count(g).unwrap();
        assert_eq!(got, expected, "{}", g.name());
    }
}

/// K(G) straight from the definition: elements generating a cyclic subgroup
/// with every group element. Independent of both production methods.
#[test]
fn k_matches_the_definitional_oracle() {
    for e in catalog_up_to(48).iter() {
        let g = &e.group;
        if g.order() < 2 {
            continue;
        }
        let mut definitional = ElemSet::empty(g.order());
        for x in 0..g.order() {
            let cyclic_with_all = (0..g.order()).all(|y| {
                let sub = g.generated_subgroup(&ElemSet::from_iter(g.order(), [x, y]));
                g.set_is_cyclic(&sub)
            });
            if cyclic_with_all {
                definitional.insert(x);
            }
        }
        let universal = epgraph::k_subgroup(g, KMethod::Universal);
        let intersection = epgraph::k_subgroup(g, KMethod::Intersection);
        assert_eq!(universal.members, definitional, "{}", g.name());
        assert_eq!(intersection.members, definitional, "{}", g.name());
    }
}
