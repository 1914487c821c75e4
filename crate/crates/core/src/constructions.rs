//! Deterministic constructors for the group families the toolkit works
//! with: cyclic, dihedral, dicyclic/generalized quaternion, elementary
//! abelian, symmetric/alternating, direct products, and 2x2 matrix groups
//! over small finite fields (including the order-48 group with a Q16 Sylow
//! 2-subgroup built inside SL2(9)).

use crate::arith::is_prime;
use crate::group::{Group, GroupError, CATALOG_MAX_ORDER};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error("{what} parameter out of range: {details}")]
    ParamOutOfRange { what: &'static str, details: String },
    #[error("order {order} exceeds the family/product cap {cap}")]
    SizeCap { order: usize, cap: usize },
    #[error("unsupported field size {0} (supported: 2, 3, 5, 9)")]
    UnsupportedField(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Family constructions addressable by kind and parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    /// C_n, any n >= 1.
    Cyclic(usize),
    /// Dihedral group of the given (even) order >= 4.
    Dihedral(usize),
    /// Dicyclic group of the given order 4m >= 8; generalized quaternion
    /// when the order is a power of two.
    Dicyclic(usize),
    /// (C_p)^k for prime p, k >= 1.
    ElementaryAbelian(usize, u32),
    /// S_n for n <= 5.
    Symmetric(usize),
    /// A_n for n <= 5.
    Alternating(usize),
}

pub fn construct_family(spec: &FamilySpec) -> Result<Group, ConstructError> {
    match *spec {
        FamilySpec::Cyclic(n) => cyclic(n),
        FamilySpec::Dihedral(order) => dihedral(order),
        FamilySpec::Dicyclic(order) => dicyclic(order),
        FamilySpec::ElementaryAbelian(p, k) => elementary_abelian(p, k),
        FamilySpec::Symmetric(n) => symmetric(n),
        FamilySpec::Alternating(n) => alternating(n),
    }
}

fn check_cap(order: usize) -> Result<(), ConstructError> {
    if order > CATALOG_MAX_ORDER {
        Err(ConstructError::SizeCap {
            order,
            cap: CATALOG_MAX_ORDER,
        })
    } else {
        Ok(())
    }
}

fn build(n: usize, name: String, mul: impl Fn(usize, usize) -> usize) -> Result<Group, ConstructError> {
    let mut flat = vec![0u16; n * n];
    for a in 0..n {
        for b in 0..n {
            flat[a * n + b] = mul(a, b) as u16;
        }
    }
    Ok(Group::from_flat_table(flat, n, name)?)
}

/// C_n with generator 1 (when n > 1); element i is the i-th power.
pub fn cyclic(n: usize) -> Result<Group, ConstructError> {
    if n == 0 {
        return Err(ConstructError::ParamOutOfRange {
            what: "cyclic",
            details: "order must be >= 1".into(),
        });
    }
    check_cap(n)?;
    build(n, format!("C{n}"), |a, b| (a + b) % n)
}

/// Dihedral group of order `2m`; element `e*m + i` is `r^i s^e`.
pub fn dihedral(order: usize) -> Result<Group, ConstructError> {
    if order < 4 || !order.is_multiple_of(2) {
        return Err(ConstructError::ParamOutOfRange {
            what: "dihedral",
            details: format!("order must be even and >= 4, got {order}"),
        });
    }
    check_cap(order)?;
    let m = order / 2;
    build(order, format!("D{order}"), move |x, y| {
        let (i, e) = (x % m, x / m);
        let (j, f) = (y % m, y / m);
        let rot = if e == 0 { (i + j) % m } else { (i + m - j % m) % m };
        (e ^ f) * m + rot
    })
}

/// Dicyclic group of order `4m` (presentation `a^{2m} = 1, b^2 = a^m,
/// b a b^-1 = a^-1`); element `e*2m + i` is `a^i b^e`. Named `Q<order>` when
/// the order is a power of two (generalized quaternion), `Dic<order>`
/// otherwise.
pub fn dicyclic(order: usize) -> Result<Group, ConstructError> {
    if order < 8 || !order.is_multiple_of(4) {
        return Err(ConstructError::ParamOutOfRange {
            what: "dicyclic",
            details: format!("order must be divisible by 4 and >= 8, got {order}"),
        });
    }
    check_cap(order)?;
    let two_m = order / 2;
    let m = order / 4;
    let name = if order.is_power_of_two() {
        format!("Q{order}")
    } else {
        format!("Dic{order}")
    };
    build(order, name, move |x, y| {
        let (i, e) = (x % two_m, x / two_m);
        let (j, f) = (y % two_m, y / two_m);
        match (e, f) {
            (0, _) => f * two_m + (i + j) % two_m,
            (1, 0) => two_m + (i + two_m - j) % two_m,
            (1, 1) => (i + two_m - j + m) % two_m,
            _ => unreachable!(),
        }
    })
}

/// (C_p)^k, elements as base-p digit strings added componentwise.
pub fn elementary_abelian(p: usize, k: u32) -> Result<Group, ConstructError> {
    if !is_prime(p) || k == 0 {
        return Err(ConstructError::ParamOutOfRange {
            what: "elementary_abelian",
            details: format!("need a prime p and k >= 1, got p={p}, k={k}"),
        });
    }
    let n = p
        .checked_pow(k)
        .filter(|&n| n <= CATALOG_MAX_ORDER)
        .ok_or(ConstructError::SizeCap {
            order: usize::MAX,
            cap: CATALOG_MAX_ORDER,
        })?;
    build(n, format!("E{n}"), move |a, b| {
        let mut out = 0;
        let mut mult = 1;
        let (mut x, mut y) = (a, b);
        for _ in 0..k {
            out += ((x + y) % p) * mult;
            mult *= p;
            x /= p;
            y /= p;
        }
        out
    })
}

fn permutations_lex(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    // Standard next-permutation loop; lexicographic, identity first.
    while let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) {
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
    out
}

fn parity(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut x = start;
        let mut len = 0;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions % 2
}

fn perm_group(perms: Vec<Vec<usize>>, degree: usize, name: String) -> Result<Group, ConstructError> {
    let n = perms.len();
    let mut index = std::collections::HashMap::new();
    for (i, p) in perms.iter().enumerate() {
        index.insert(p.clone(), i);
    }
    let mut flat = vec![0u16; n * n];
    for a in 0..n {
        for b in 0..n {
            let prod: Vec<usize> = (0..degree).map(|x| perms[a][perms[b][x]]).collect();
            flat[a * n + b] = index[&prod] as u16;
        }
    }
    Ok(Group::from_flat_table(flat, n, name)?)
}

/// S_n on lexicographically ordered permutations, n <= 5.
pub fn symmetric(n: usize) -> Result<Group, ConstructError> {
    if n == 0 || n > 5 {
        return Err(ConstructError::ParamOutOfRange {
            what: "symmetric",
            details: format!("need 1 <= n <= 5, got {n}"),
        });
    }
    perm_group(permutations_lex(n), n, format!("S{n}"))
}

/// A_n (even permutations, lexicographic), n <= 5.
pub fn alternating(n: usize) -> Result<Group, ConstructError> {
    if n == 0 || n > 5 {
        return Err(ConstructError::ParamOutOfRange {
            what: "alternating",
            details: format!("need 1 <= n <= 5, got {n}"),
        });
    }
    let perms: Vec<Vec<usize>> = permutations_lex(n)
        .into_iter()
        .filter(|p| parity(p) == 0)
        .collect();
    perm_group(perms, n, format!("A{n}"))
}

/// Direct product with element `(a, b)` at id `a * |H| + b`.
pub fn direct_product(g: &Group, h: &Group) -> Result<Group, ConstructError> {
    let n = g.order() * h.order();
    check_cap(n)?;
    let hn = h.order();
    let name = format!("{}x{}", g.name(), h.name());
    let mut flat = vec![0u16; n * n];
    for a1 in 0..g.order() {
        for b1 in 0..hn {
            for a2 in 0..g.order() {
                for b2 in 0..hn {
                    let x = a1 * hn + b1;
                    let y = a2 * hn + b2;
                    flat[x * n + y] = (g.mul(a1, a2) * hn + h.mul(b1, b2)) as u16;
                }
            }
        }
    }
    Ok(Group::from_flat_table(flat, n, name)?)
}

/// GF(q) for q in {2, 3, 5, 9}, elements as indices `0..q`.
///
/// For q = 9 the modulus is x^2 + 1 (irreducible over GF(3) since -1 is a
/// non-square mod 3); index `a + 3b` encodes `a + b*x`, so index 3 is the
/// class of x, a square root of -1.
#[derive(Clone, Copy, Debug)]
pub struct Field {
    pub q: usize,
    pub p: usize,
    pub degree: u32,
}

impl Field {
    pub fn new(q: usize) -> Result<Field, ConstructError> {
        match q {
            2 | 3 | 5 => Ok(Field { q, p: q, degree: 1 }),
            9 => Ok(Field {
                q,
                p: 3,
                degree: 2,
            }),
            _ => Err(ConstructError::UnsupportedField(q)),
        }
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        if self.degree == 1 {
            (a + b) % self.p
        } else {
            let p = self.p;
            (a % p + b % p) % p + ((a / p + b / p) % p) * p
        }
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        if self.degree == 1 {
            (self.p - a) % self.p
        } else {
            let p = self.p;
            (p - a % p) % p + ((p - a / p) % p) * p
        }
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        if self.degree == 1 {
            (a * b) % self.p
        } else {
            // (a0 + a1 x)(b0 + b1 x) with x^2 = -1.
            let p = self.p;
            let (a0, a1) = (a % p, a / p);
            let (b0, b1) = (b % p, b / p);
            let c0 = (a0 * b0 + p * p - a1 * b1) % p;
            let c1 = (a0 * b1 + a1 * b0) % p;
            c0 + c1 * p
        }
    }
}

/// 2x2 matrix over a [`Field`], entries as field indices, row major.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mat2(pub [usize; 4]);

impl Mat2 {
    pub fn det(&self, f: &Field) -> usize {
        f.sub(f.mul(self.0[0], self.0[3]), f.mul(self.0[1], self.0[2]))
    }

    pub fn mul(&self, other: &Mat2, f: &Field) -> Mat2 {
        let a = &self.0;
        let b = &other.0;
        Mat2([
            f.add(f.mul(a[0], b[0]), f.mul(a[1], b[2])),
            f.add(f.mul(a[0], b[1]), f.mul(a[1], b[3])),
            f.add(f.mul(a[2], b[0]), f.mul(a[3], b[2])),
            f.add(f.mul(a[2], b[1]), f.mul(a[3], b[3])),
        ])
    }

    /// Row-major canonical code; drives the dense id assignment.
    pub fn code(&self, f: &Field) -> usize {
        ((self.0[0] * f.q + self.0[1]) * f.q + self.0[2]) * f.q + self.0[3]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixKind {
    Sl2,
    Gl2,
}

/// Builds a group from an explicit matrix list over `f`, with ids assigned
/// in ascending row-major code order (the identity is then relabeled to 0
/// by the table constructor). Panics if the list is not closed under
/// multiplication; closure failures mean broken field arithmetic, not bad
/// input.
fn group_from_matrices(mats: Vec<Mat2>, f: &Field, name: String) -> Result<Group, ConstructError> {
    let mut mats = mats;
    mats.sort_by_key(|m| m.code(f));
    let n = mats.len();
    let mut code_to_id = vec![usize::MAX; f.q * f.q * f.q * f.q];
    for (i, m) in mats.iter().enumerate() {
        code_to_id[m.code(f)] = i;
    }
    let identity = code_to_id[Mat2([1, 0, 0, 1]).code(f)];
    assert!(identity != usize::MAX, "identity matrix missing from matrix set");

    let relabel = |x: usize| {
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
            let prod = code_to_id[mats[a].mul(&mats[b], f).code(f)];
            assert!(
                prod != usize::MAX,
                "matrix set for {name} is not closed under multiplication"
            );
            flat[relabel(a) * n + relabel(b)] = relabel(prod) as u16;
        }
    }
    Ok(Group::from_flat_table(flat, n, name)?)
}

/// SL2(q) or GL2(q) for q in {2, 3, 5, 9} by direct enumeration:
/// |GL2(q)| = (q^2 - 1)(q^2 - q) and |SL2(q)| = |GL2(q)| / (q - 1).
pub fn matrix_group(kind: MatrixKind, q: usize) -> Result<Group, ConstructError> {
    let f = Field::new(q)?;
    let mut mats = Vec::new();
    for e00 in 0..q {
        for e01 in 0..q {
            for e10 in 0..q {
                for e11 in 0..q {
                    let m = Mat2([e00, e01, e10, e11]);
                    let d = m.det(&f);
                    let keep = match kind {
                        MatrixKind::Sl2 => d == 1,
                        MatrixKind::Gl2 => d != 0,
                    };
                    if keep {
                        mats.push(m);
                    }
                }
            }
        }
    }
    let tag = match kind {
        MatrixKind::Sl2 => "SL2",
        MatrixKind::Gl2 => "GL2",
    };
    group_from_matrices(mats, &f, format!("{tag}_{q}"))
}

/// The order-48 group with generalized quaternion Sylow 2-subgroup, built
/// inside SL2(9) as the union of SL2(3) (prime-subfield entries) and the
/// coset `delta * {g in GL2(3) : det g = -1}` where `delta^2 = -1`.
///
/// The construction is verified on the spot: 48 elements closed under
/// multiplication, with a Sylow 2-subgroup that is generalized quaternion
/// of order 16. Failures panic, since they can only come from broken field
/// arithmetic.
pub fn gl2_3_tilde() -> Group {
    let f9 = Field::new(9).expect("GF(9) is supported");
    let delta = 3; // index of x in GF(9) = GF(3)[x]/(x^2+1)
    let mut mats = Vec::new();
    for e00 in 0..3 {
        for e01 in 0..3 {
            for e10 in 0..3 {
                for e11 in 0..3 {
                    let m = Mat2([e00, e01, e10, e11]);
                    match m.det(&f9) {
                        1 => mats.push(m),
                        2 => {
                            // det = -1 over GF(3); delta * m has det 1 in GF(9).
                            mats.push(Mat2([
                                f9.mul(delta, e00),
                                f9.mul(delta, e01),
                                f9.mul(delta, e10),
                                f9.mul(delta, e11),
                            ]));
                        }
                        _ => {}
                    }
                }
            }
        }
    }
    assert_eq!(mats.len(), 48, "expected 24 + 24 matrices");
    let g = group_from_matrices(mats, &f9, "GL2_3_TILDE".into())
        .expect("order-48 matrix set must build");
    let sylow2 = g.sylow(2).expect("2 is prime");
    assert_eq!(sylow2.len(), 16, "Sylow 2-subgroup must have order 16");
    let sub = g.subgroup_group(&sylow2).expect("Sylow subgroup extracts");
    assert!(
        sub.is_generalized_quaternion(),
        "Sylow 2-subgroup must be generalized quaternion"
    );
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::is_isomorphic;

    #[test]
    fn cyclic_orders_follow_phi() {
        let g = cyclic(12).unwrap();
        assert_eq!(g.center().len(), 12);
        // phi counts per divisor of 12.
        assert_eq!(
            g.order_census(),
            vec![(1, 1), (2, 1), (3, 2), (4, 2), (6, 2), (12, 4)]
        );
    }

    #[test]
    fn q16_is_generalized_quaternion() {
        let g = dicyclic(16).unwrap();
        assert_eq!(g.name(), "Q16");
        assert_eq!(g.count_of_order(2), 1);
        assert!(!g.is_cyclic_group());
        assert!(g.is_generalized_quaternion());
    }

    #[test]
    fn dicyclic_12_exists() {
        let g = dicyclic(12).unwrap();
        assert_eq!(g.name(), "Dic12");
        assert_eq!(g.count_of_order(2), 1);
        assert_eq!(g.center().len(), 2);
    }

    #[test]
    fn d8_five_involutions() {
        let g = dihedral(8).unwrap();
        assert_eq!(g.count_of_order(2), 5);
        assert!(!g.is_generalized_quaternion());
    }

    #[test]
    fn klein_four() {
        let a = elementary_abelian(2, 2).unwrap();
        let b = direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap();
        assert_eq!(a.order_census(), vec![(1, 1), (2, 3)]);
        assert!(is_isomorphic(&a, &b).unwrap());
    }

    #[test]
    fn product_with_trivial_is_identity_map() {
        let g = dicyclic(8).unwrap();
        let t = cyclic(1).unwrap();
        let p = direct_product(&g, &t).unwrap();
        assert!(is_isomorphic(&g, &p).unwrap());
    }

    #[test]
    fn symmetric_and_alternating_orders() {
        assert_eq!(symmetric(3).unwrap().order(), 6);
        assert_eq!(symmetric(4).unwrap().order(), 24);
        assert_eq!(symmetric(5).unwrap().order(), 120);
        assert_eq!(alternating(4).unwrap().order(), 12);
        assert_eq!(alternating(5).unwrap().order(), 60);
    }

    #[test]
    fn matrix_group_orders_match_formulas() {
        // |GL2(q)| = (q^2-1)(q^2-q), |SL2(q)| = |GL2(q)|/(q-1).
        for (q, gl, sl) in [(2, 6, 6), (3, 48, 24), (5, 480, 120)] {
            assert_eq!(matrix_group(MatrixKind::Gl2, q).unwrap().order(), gl);
            assert_eq!(matrix_group(MatrixKind::Sl2, q).unwrap().order(), sl);
        }
        assert!(matches!(
            matrix_group(MatrixKind::Sl2, 7),
            Err(ConstructError::UnsupportedField(7))
        ));
    }

    #[test]
    #[ignore = "builds the order-5760 GL2(9) table; slow in debug builds"]
    fn gl2_9_order() {
        assert_eq!(matrix_group(MatrixKind::Gl2, 9).unwrap().order(), 5760);
    }

    #[test]
    fn sl2_9_order() {
        assert_eq!(matrix_group(MatrixKind::Sl2, 9).unwrap().order(), 720);
    }

    #[test]
    fn gf9_squares() {
        let f = Field::new(9).unwrap();
        // delta = x has delta^2 = -1 = 2.
        assert_eq!(f.mul(3, 3), 2);
        for a in 0..9 {
            assert_eq!(f.add(a, f.neg(a)), 0);
        }
    }

    #[test]
    fn family_param_errors() {
        assert!(cyclic(0).is_err());
        assert!(dihedral(5).is_err());
        assert!(dicyclic(10).is_err());
        assert!(elementary_abelian(4, 2).is_err());
        assert!(symmetric(6).is_err());
        assert!(matches!(cyclic(513), Err(ConstructError::SizeCap { .. })));
    }
}
