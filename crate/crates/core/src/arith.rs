//! Small integer helpers shared across the kernel.

/// Prime factorization by trial division, as (prime, exponent) pairs in
/// ascending prime order. `factorize(1)` is empty.
pub fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_divisors(n: usize) -> Vec<usize> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Largest power of `p` dividing `n` (the p-part). `p_part(1, p) = 1`.
pub fn p_part(mut n: usize, p: usize) -> usize {
    let mut part = 1;
    while n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}

/// Cofactor of the p-part: `n / p_part(n, p)`.
pub fn p_prime_part(n: usize, p: usize) -> usize {
    n / p_part(n, p)
}

/// splitmix64; the kernel samples associativity triples with a fixed seed so
/// validation is reproducible.
pub struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_small() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(2), vec![(2, 1)]);
        assert_eq!(factorize(48), vec![(2, 4), (3, 1)]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(509), vec![(509, 1)]);
    }

    #[test]
    fn parts() {
        assert_eq!(p_part(48, 2), 16);
        assert_eq!(p_part(48, 3), 3);
        assert_eq!(p_part(48, 5), 1);
        assert_eq!(p_prime_part(48, 2), 3);
        assert!(is_prime(2) && is_prime(97) && !is_prime(1) && !is_prime(91));
    }
}
