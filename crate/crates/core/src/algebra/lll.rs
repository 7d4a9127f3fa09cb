//! LLL reduction of integer lattices in exact integer arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Nearest integer to a / b for b > 0, ties rounded up.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let num: BigInt = a * 2 + b;
    num.div_floor(&(b * 2))
}

/// LLL-reduce the rows of `basis` with δ = 3/4, using integer Gram–Schmidt
/// data d_i and λ_{ij} only. The rows must be linearly independent; a
/// dependent input is returned unchanged.
pub fn lll(mut b: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let n = b.len();
    if n < 2 {
        return b;
    }
    // d[i + 1] belongs to row i; d[0] = 1
    let mut d = vec![BigInt::one(); n + 1];
    let mut lam = vec![vec![BigInt::zero(); n]; n];
    d[1] = dot(&b[0], &b[0]);
    if d[1].is_zero() {
        return b;
    }
    let mut k = 1;
    let mut kmax = 0;
    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = dot(&b[k], &b[j]);
                for i in 0..j {
                    u = (&d[i + 1] * &u - &lam[k][i] * &lam[j][i]) / &d[i];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    if u.is_zero() {
                        return b;
                    }
                    d[k + 1] = u;
                }
            }
        }
        reduce(&mut b, &mut lam, &d, k, k - 1);
        let l = &lam[k][k - 1];
        if BigInt::from(4) * &d[k + 1] * &d[k - 1] < BigInt::from(3) * &d[k] * &d[k] - BigInt::from(4) * l * l {
            swap(&mut b, &mut lam, &mut d, k, kmax);
            k = (k - 1).max(1);
        } else {
            for l in (0..k - 1).rev() {
                reduce(&mut b, &mut lam, &d, k, l);
            }
            k += 1;
        }
    }
    b
}

fn reduce(b: &mut [Vec<BigInt>], lam: &mut [Vec<BigInt>], d: &[BigInt], k: usize, l: usize) {
    let twice: BigInt = &lam[k][l] * 2;
    if twice.abs() <= d[l + 1] {
        return;
    }
    let q = round_div(&lam[k][l], &d[l + 1]);
    let bl = b[l].clone();
    for (x, y) in b[k].iter_mut().zip(&bl) {
        *x -= &q * y;
    }
    lam[k][l] -= &q * &d[l + 1];
    for i in 0..l {
        let t = &q * &lam[l][i];
        lam[k][i] -= t;
    }
}

fn swap(b: &mut [Vec<BigInt>], lam: &mut [Vec<BigInt>], d: &mut [BigInt], k: usize, kmax: usize) {
    b.swap(k, k - 1);
    for j in 0..k - 1 {
        let t = lam[k][j].clone();
        lam[k][j] = lam[k - 1][j].clone();
        lam[k - 1][j] = t;
    }
    let l = lam[k][k - 1].clone();
    let big_b = (&d[k - 1] * &d[k + 1] + &l * &l) / &d[k];
    for i in k + 1..=kmax {
        let t = lam[i][k].clone();
        lam[i][k] = (&d[k + 1] * &lam[i][k - 1] - &l * &t) / &d[k];
        lam[i][k - 1] = (&big_b * &t + &l * &lam[i][k]) / &d[k + 1];
    }
    d[k] = big_b;
}

/// Squared Euclidean length.
pub fn norm2(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x * x).sum()
}

/// Max absolute coordinate.
pub fn height(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn classic_example() {
        let b = vec![row(&[1, 1, 1]), row(&[-1, 0, 2]), row(&[3, 5, 6])];
        let r = lll(b);
        assert_eq!(r[0], row(&[0, 1, 0]));
        assert!(norm2(&r[1]) <= BigInt::from(2));
    }

    #[test]
    fn finds_integer_relation() {
        // 3 * 0.25 - 1 * 0.75 = 0, scaled by 2^20
        let s = 1i64 << 20;
        let b = vec![row(&[1, 0, s / 4]), row(&[0, 1, 3 * s / 4])];
        let r = lll(b);
        assert!(r.iter().any(|v| v[2].is_zero() && (v[0] == BigInt::from(3) || v[0] == BigInt::from(-3))));
    }
}
