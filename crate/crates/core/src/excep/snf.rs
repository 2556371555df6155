//! Smith normal form over the integers, with the unimodular transforms.

use crate::matrix::IntMatrix;

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal, each
/// diagonal entry nonnegative and dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub diagonal: Vec<i64>,
}

type Mat = Vec<Vec<i128>>;

fn to_rows(m: &IntMatrix) -> Mat {
    m.rows().into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect()
}

fn from_rows(m: &Mat) -> IntMatrix {
    let rows: Vec<Vec<i64>> =
        m.iter().map(|r| r.iter().map(|&x| i64::try_from(x).expect("entry fits in i64")).collect()).collect();
    IntMatrix::from_rows(&rows)
}

fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

fn swap_cols(m: &mut Mat, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// `row[dst] -= f * row[src]`
fn row_axpy(m: &mut Mat, dst: usize, src: usize, f: i128) {
    for j in 0..m[0].len() {
        let s = m[src][j];
        m[dst][j] -= f * s;
    }
}

fn col_axpy(m: &mut Mat, dst: usize, src: usize, f: i128) {
    for row in m.iter_mut() {
        let s = row[src];
        row[dst] -= f * s;
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let n = m.dim();
    let mut a = to_rows(m);
    let mut u = identity(n);
    let mut v = identity(n);

    for t in 0..n {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let pivot = (t..n)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs());
            let Some((pi, pj)) = pivot else { break };
            a.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut a, t, pj);
            swap_cols(&mut v, t, pj);

            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..n {
                let f = a[i][t].div_euclid(p);
                if f != 0 {
                    row_axpy(&mut a, i, t, f);
                    row_axpy(&mut u, i, t, f);
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..n {
                let f = a[t][j].div_euclid(p);
                if f != 0 {
                    col_axpy(&mut a, j, t, f);
                    col_axpy(&mut v, j, t, f);
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // Divisibility: fold an offending row into the pivot row and retry.
            let bad = (t + 1..n).find(|&i| (t + 1..n).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    row_axpy(&mut a, t, i, -1);
                    row_axpy(&mut u, t, i, -1);
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for x in a[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
    }

    let diagonal = (0..n).map(|i| i64::try_from(a[i][i]).expect("diagonal fits in i64")).collect();
    SmithForm { u: from_rows(&u), v: from_rows(&v), diagonal }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(m);
        let d = s.u.mul(m).mul(&s.v);
        for i in 0..m.dim() {
            for j in 0..m.dim() {
                let expect = if i == j { s.diagonal[i] } else { 0 };
                assert_eq!(d.get(i, j), expect, "{i},{j}");
            }
        }
        assert_eq!(s.u.det().abs(), 1);
        assert_eq!(s.v.det().abs(), 1);
        for w in s.diagonal.windows(2) {
            assert!(w[0] >= 0 && (w[0] == 0 && w[1] == 0 || w[0] != 0 && w[1] % w[0] == 0));
        }
        s
    }

    #[test]
    fn known_forms() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(check(&m).diagonal, vec![2, 6, 12]);
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(check(&m).diagonal, vec![1, 6]);
        assert_eq!(check(&IntMatrix::scalar(3, -5)).diagonal, vec![5, 5, 5]);
    }

    #[test]
    fn random_small_matrices() {
        let mut x: u64 = 12345;
        for _ in 0..300 {
            let n = 1 + (x % 4) as usize;
            let rows: Vec<Vec<i64>> = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                            ((x >> 33) % 13) as i64 - 6
                        })
                        .collect()
                })
                .collect();
            let m = IntMatrix::from_rows(&rows);
            let s = check(&m);
            let prod: i128 = s.diagonal.iter().map(|&d| d as i128).product();
            assert_eq!(prod, m.det().abs() as i128);
        }
    }
}
