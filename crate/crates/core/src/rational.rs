//! Exact rationals and the small integer linear algebra used on lattices.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number, always reduced with positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p"`, `"p/q"` or `"-p/q"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

/// Formats as `p` or `p/q`.
pub fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

pub fn to_i64(r: &Rat) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

pub fn dot_int_rat(a: &[i64], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| y * int(*x)).sum()
}

pub fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, x| g.gcd(x))
}

/// Determinant of a small square integer matrix (Bareiss elimination).
pub fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

/// Solves the square system `m x = b` over the rationals; `None` when singular.
pub fn solve_rat(m: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..=n {
                    let v = &a[col][c] * &f;
                    a[r][c] -= v;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n].clone()).collect())
}

/// Inverse of a unimodular integer matrix, `None` if `|det| != 1`.
pub fn unimodular_inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = m.len();
    if det(m).abs() != 1 {
        return None;
    }
    let rows: Vec<Vec<Rat>> = m.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
    let mut inv = vec![vec![0i64; n]; n];
    for c in 0..n {
        let e: Vec<Rat> = (0..n).map(|i| if i == c { Rat::one() } else { Rat::zero() }).collect();
        let col = solve_rat(&rows, &e)?;
        for r in 0..n {
            inv[r][c] = to_i64(&col[r])?;
        }
    }
    Some(inv)
}

/// Column-style Hermite reduction: returns `(h, u)` with `a * u = h`, `u` unimodular and
/// `h` in column echelon form. The number of nonzero columns of `h` is the rank of `a`.
pub fn column_echelon(a: &[Vec<i128>]) -> (Vec<Vec<i128>>, Vec<Vec<i128>>, usize) {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut h: Vec<Vec<i128>> = a.to_vec();
    let mut u: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| i128::from(i == j)).collect())
        .collect();
    let col_op = |m: &mut Vec<Vec<i128>>, dst: usize, src: usize, f: i128| {
        for row in m.iter_mut() {
            row[dst] -= f * row[src];
        }
    };
    let swap = |m: &mut Vec<Vec<i128>>, i: usize, j: usize| {
        for row in m.iter_mut() {
            row.swap(i, j);
        }
    };
    let mut pc = 0;
    for r in 0..rows {
        if pc == cols {
            break;
        }
        loop {
            let nz: Vec<usize> = (pc..cols).filter(|&c| h[r][c] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let best = *nz.iter().min_by_key(|&&c| h[r][c].abs()).unwrap();
            swap(&mut h, pc, best);
            swap(&mut u, pc, best);
            let mut done = true;
            for c in pc + 1..cols {
                if h[r][c] != 0 {
                    let f = h[r][c].div_euclid(h[r][pc]);
                    col_op(&mut h, c, pc, f);
                    col_op(&mut u, c, pc, f);
                    if h[r][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[r][pc] != 0 {
            if h[r][pc] < 0 {
                for m in [&mut h, &mut u] {
                    for row in m.iter_mut() {
                        row[pc] = -row[pc];
                    }
                }
            }
            pc += 1;
        }
    }
    (h, u, pc)
}

/// Basis of the integer kernel `{x : a x = 0}`.
pub fn integer_kernel(a: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    let a128: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    if a128.is_empty() {
        return (0..ncols)
            .map(|i| (0..ncols).map(|j| i64::from(i == j)).collect())
            .collect();
    }
    let (_, u, rank) = column_echelon(&a128);
    (rank..ncols)
        .map(|c| (0..ncols).map(|r| u[r][c] as i64).collect())
        .collect()
}

/// Integer solution of `a x = b`, if one exists.
pub fn solve_integer(a: &[Vec<i128>], b: &[i128]) -> Option<Vec<i128>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let (h, u, rank) = column_echelon(a);
    let mut y = vec![0i128; cols];
    let mut rest: Vec<i128> = b.to_vec();
    let mut c = 0;
    for r in 0..rows {
        if c < rank && h[r][c] != 0 {
            if rest[r] % h[r][c] != 0 {
                return None;
            }
            y[c] = rest[r] / h[r][c];
            for (rr, val) in rest.iter_mut().enumerate() {
                *val -= h[rr][c] * y[c];
            }
            c += 1;
        } else if rest[r] != 0 {
            return None;
        }
    }
    if rest.iter().any(|&v| v != 0) {
        return None;
    }
    Some((0..cols).map(|r| (0..cols).map(|k| u[r][k] * y[k]).sum()).collect())
}

/// Least common multiple of the denominators.
pub fn common_denominator(v: &[Rat]) -> BigInt {
    v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()))
}

pub fn abs(r: &Rat) -> Rat {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints() {
        assert_eq!(parse_rat("7/20").unwrap(), rat(7, 20));
        assert_eq!(parse_rat(" -3 ").unwrap(), int(-3));
        assert_eq!(fmt_rat(&rat(6, -4)), "-3/2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("0.5").is_err());
    }

    #[test]
    fn determinants() {
        assert_eq!(det(&[vec![0, 1], vec![1, -1]]), -1);
        assert_eq!(det(&[vec![2, 0, 0], vec![0, 3, 0], vec![1, 1, 1]]), 6);
        assert_eq!(det(&[vec![1, 2], vec![2, 4]]), 0);
    }

    #[test]
    fn kernel_of_square_normals() {
        let a = vec![vec![1, -1, 0, 0], vec![0, 0, 1, -1]];
        let k = integer_kernel(&a, 4);
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &a {
                assert_eq!(row.iter().zip(v).map(|(x, y)| x * y).sum::<i64>(), 0);
            }
        }
    }

    #[test]
    fn integer_systems() {
        let a = vec![vec![2i128, 4], vec![1, 3]];
        let x = solve_integer(&a, &[2, 2]).unwrap();
        assert_eq!(2 * x[0] + 4 * x[1], 2);
        assert_eq!(x[0] + 3 * x[1], 2);
        assert!(solve_integer(&[vec![2i128, 4]], &[3]).is_none());
    }

    #[test]
    fn unimodular_inverse_roundtrip() {
        let m = vec![vec![-1, 1], vec![0, 1]];
        let inv = unimodular_inverse(&m).unwrap();
        assert_eq!(inv, vec![vec![-1, 1], vec![0, 1]]);
        assert!(unimodular_inverse(&[vec![2, 0], vec![0, 1]]).is_none());
    }
}
