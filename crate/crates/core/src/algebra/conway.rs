//! Conway polynomials for small odd characteristic.
//!
//! Coefficients are listed in ascending degree, monic.

const TABLE: &[(u32, u32, &[u32])] = &[
    (3, 1, &[1, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (3, 6, &[2, 2, 1, 0, 2, 0, 1]),
    (5, 1, &[3, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (5, 4, &[2, 4, 4, 0, 1]),
    (5, 5, &[3, 4, 0, 0, 0, 1]),
    (5, 6, &[2, 0, 1, 4, 1, 0, 1]),
    (7, 1, &[4, 1]),
    (7, 2, &[3, 6, 1]),
    (7, 3, &[4, 0, 6, 1]),
    (7, 4, &[3, 4, 5, 0, 1]),
    (7, 5, &[4, 1, 0, 0, 0, 1]),
    (7, 6, &[3, 6, 4, 5, 1, 0, 1]),
    (11, 1, &[9, 1]),
    (11, 2, &[2, 7, 1]),
    (11, 3, &[9, 2, 0, 1]),
    (11, 4, &[2, 10, 8, 0, 1]),
    (11, 5, &[9, 0, 10, 0, 0, 1]),
    (13, 1, &[11, 1]),
    (13, 2, &[2, 12, 1]),
    (13, 3, &[11, 2, 0, 1]),
    (13, 4, &[2, 12, 3, 0, 1]),
    (13, 5, &[11, 4, 0, 0, 0, 1]),
    (17, 1, &[14, 1]),
    (17, 2, &[3, 16, 1]),
    (17, 3, &[14, 1, 0, 1]),
    (17, 4, &[3, 10, 7, 0, 1]),
    (19, 1, &[17, 1]),
    (19, 2, &[2, 18, 1]),
    (19, 3, &[17, 4, 0, 1]),
    (19, 4, &[2, 11, 2, 0, 1]),
    (23, 1, &[18, 1]),
    (23, 2, &[5, 21, 1]),
    (23, 3, &[18, 2, 0, 1]),
    (23, 4, &[5, 19, 3, 0, 1]),
];

pub fn lookup(p: u32, e: u32) -> Option<&'static [u32]> {
    TABLE.iter().find(|&&(tp, te, _)| tp == p && te == e).map(|&(_, _, m)| m)
}

#[cfg(test)]
mod tests {
    use super::super::field::prime_poly::{is_primitive, mulmod, powmod};
    use super::*;

    /// Evaluate `c` at `base` modulo `m`, all over F_p.
    fn compose(c: &[u32], base: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut acc: Vec<u32> = Vec::new();
        for &co in c.iter().rev() {
            acc = mulmod(&acc, base, m, p);
            if acc.is_empty() {
                acc.push(0);
            }
            acc[0] = (acc[0] + co) % p;
            while acc.last() == Some(&0) {
                acc.pop();
            }
        }
        acc
    }

    /// Conway order: write f = x^n - a_{n-1}x^{n-1} + a_{n-2}x^{n-2} - ...
    /// and compare (a_{n-1}, ..., a_0) lexicographically.
    fn conway_key(c: &[u32], p: u32) -> Vec<u32> {
        let n = c.len() - 1;
        (0..n)
            .rev()
            .map(|i| if (n - i) % 2 == 0 { c[i] } else { (p - c[i]) % p })
            .collect()
    }

    fn compatible(c: &[u32], p: u32, n: u32) -> bool {
        (1..n).filter(|d| n % d == 0).all(|d| {
            let k = ((p as u64).pow(n) - 1) / ((p as u64).pow(d) - 1);
            let b = powmod(&[0, 1], k, c, p);
            compose(lookup(p, d).unwrap(), &b, c, p).is_empty()
        })
    }

    #[test]
    fn table_satisfies_conway_definition() {
        for &(p, n, entry) in TABLE.iter().filter(|&&(p, n, _)| (p as u64).pow(n) <= 3000) {
            assert!(is_primitive(entry, p), "({p},{n}) not primitive");
            assert!(compatible(entry, p, n), "({p},{n}) not compatible");
            let key = conway_key(entry, p);
            // every smaller candidate must fail
            let total = (p as u64).pow(n);
            for idx in 0..total {
                let mut c = vec![0u32; n as usize + 1];
                c[n as usize] = 1;
                let mut v = idx;
                for i in 0..n as usize {
                    c[i] = (v % p as u64) as u32;
                    v /= p as u64;
                }
                if conway_key(&c, p) >= key {
                    continue;
                }
                assert!(
                    c[0] == 0 || !is_primitive(&c, p) || !compatible(&c, p, n),
                    "({p},{n}) smaller candidate {c:?} qualifies"
                );
            }
        }
    }
}
