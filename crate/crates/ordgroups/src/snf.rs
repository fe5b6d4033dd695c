//! Smith normal form of integer matrices by unimodular row and column
//! operations, with the transforms kept so a decomposition can be replayed
//! and checked without redoing the reduction.

use serde::{Deserialize, Serialize};

/// A dense integer matrix, row major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i128>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i128>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> i128 {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut m = self.clone();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if m[(k, k)] == 0 {
                let swap = (k + 1..n).find(|&i| m[(i, k)] != 0);
                match swap {
                    Some(i) => {
                        for j in 0..n {
                            let tmp = m[(k, j)];
                            m[(k, j)] = m[(i, j)];
                            m[(i, j)] = tmp;
                        }
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[(i, j)] = (m[(i, j)] * m[(k, k)] - m[(i, k)] * m[(k, j)]) / prev;
                }
                m[(i, k)] = 0;
            }
            prev = m[(k, k)];
        }
        sign * m[(n - 1, n - 1)]
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i128;
    fn index(&self, (i, j): (usize, usize)) -> &i128 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i128 {
        &mut self.data[i * self.cols + j]
    }
}

/// `row_transform * matrix * col_transform = diagonal`, with both transforms
/// unimodular and the diagonal entries nonnegative, each dividing the next.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithDecomposition {
    pub matrix: IntMatrix,
    pub row_transform: IntMatrix,
    pub col_transform: IntMatrix,
    pub diagonal: Vec<i128>,
}

impl SmithDecomposition {
    /// Replay the decomposition: transforms multiply back to the diagonal,
    /// are unimodular, and the diagonal satisfies the divisibility chain.
    pub fn verify(&self) -> bool {
        let product = self.row_transform.mul(&self.matrix).mul(&self.col_transform);
        let n = self.matrix.rows.min(self.matrix.cols);
        if self.diagonal.len() != n {
            return false;
        }
        for i in 0..self.matrix.rows {
            for j in 0..self.matrix.cols {
                let expected = if i == j { self.diagonal[i] } else { 0 };
                if product[(i, j)] != expected {
                    return false;
                }
            }
        }
        if self.diagonal.iter().any(|&d| d < 0) {
            return false;
        }
        for w in self.diagonal.windows(2) {
            if (w[0] != 0 && w[1] % w[0] != 0) || (w[0] == 0 && w[1] != 0) {
                return false;
            }
        }
        self.row_transform.det().abs() == 1 && self.col_transform.det().abs() == 1
    }

    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|&&d| d != 0).count()
    }
}

fn swap_rows(m: &mut IntMatrix, p: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols {
        m.data.swap(a * m.cols + j, b * m.cols + j);
    }
    for j in 0..p.cols {
        p.data.swap(a * p.cols + j, b * p.cols + j);
    }
}

fn swap_cols(m: &mut IntMatrix, q: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows {
        m.data.swap(i * m.cols + a, i * m.cols + b);
    }
    for i in 0..q.rows {
        q.data.swap(i * q.cols + a, i * q.cols + b);
    }
}

fn add_row(m: &mut IntMatrix, p: &mut IntMatrix, src: usize, dst: usize, factor: i128) {
    for j in 0..m.cols {
        m[(dst, j)] += factor * m[(src, j)];
    }
    for j in 0..p.cols {
        p[(dst, j)] += factor * p[(src, j)];
    }
}

fn add_col(m: &mut IntMatrix, q: &mut IntMatrix, src: usize, dst: usize, factor: i128) {
    for i in 0..m.rows {
        m[(i, dst)] += factor * m[(i, src)];
    }
    for i in 0..q.rows {
        q[(i, dst)] += factor * q[(i, src)];
    }
}

fn negate_row(m: &mut IntMatrix, p: &mut IntMatrix, r: usize) {
    for j in 0..m.cols {
        m[(r, j)] = -m[(r, j)];
    }
    for j in 0..p.cols {
        p[(r, j)] = -p[(r, j)];
    }
}

/// Diagonalize by repeated pivoting on the least nonzero entry.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let mut m = a.clone();
    let mut p = IntMatrix::identity(a.rows);
    let mut q = IntMatrix::identity(a.cols);
    let n = a.rows.min(a.cols);

    for k in 0..n {
        'pivot: loop {
            // least nonzero entry of the trailing block moves to (k, k)
            let mut best: Option<(usize, usize)> = None;
            for i in k..a.rows {
                for j in k..a.cols {
                    if m[(i, j)] != 0 && best.is_none_or(|b| m[(i, j)].abs() < m[b].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break 'pivot };
            swap_rows(&mut m, &mut p, k, bi);
            swap_cols(&mut m, &mut q, k, bj);
            if m[(k, k)] < 0 {
                negate_row(&mut m, &mut p, k);
            }
            let pivot = m[(k, k)];

            // clear the pivot row and column by Euclidean steps
            let mut dirty = false;
            for i in k + 1..a.rows {
                let f = m[(i, k)].div_euclid(pivot);
                if f != 0 {
                    add_row(&mut m, &mut p, k, i, -f);
                }
                if m[(i, k)] != 0 {
                    dirty = true;
                }
            }
            for j in k + 1..a.cols {
                let f = m[(k, j)].div_euclid(pivot);
                if f != 0 {
                    add_col(&mut m, &mut q, k, j, -f);
                }
                if m[(k, j)] != 0 {
                    dirty = true;
                }
            }
            if dirty {
                continue 'pivot;
            }

            // pivot must divide the rest of the block; if not, fold the
            // offending row in and restart the pivot hunt
            for i in k + 1..a.rows {
                for j in k + 1..a.cols {
                    if m[(i, j)] % pivot != 0 {
                        add_row(&mut m, &mut p, i, k, 1);
                        continue 'pivot;
                    }
                }
            }
            break 'pivot;
        }
    }

    let diagonal = (0..n).map(|i| m[(i, i)]).collect();
    SmithDecomposition { matrix: a.clone(), row_transform: p, col_transform: q, diagonal }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// gcd-based oracle for the invariant factors of a 2x2 matrix
    fn two_by_two_oracle(a: i128, b: i128, c: i128, d: i128) -> Vec<i128> {
        fn gcd(a: i128, b: i128) -> i128 {
            let (mut a, mut b) = (a.abs(), b.abs());
            while b != 0 {
                let t = a % b;
                a = b;
                b = t;
            }
            a
        }
        let d1 = gcd(gcd(a, b), gcd(c, d));
        if d1 == 0 {
            return vec![0, 0];
        }
        let det = (a * d - b * c).abs();
        vec![d1, det / d1]
    }

    #[test]
    fn known_decompositions() {
        let m = IntMatrix::from_rows(vec![vec![0, 5], vec![5, 0]]);
        let snf = smith_normal_form(&m);
        assert!(snf.verify());
        assert_eq!(snf.diagonal, vec![5, 5]);

        let m = IntMatrix::from_rows(vec![vec![7, -3], vec![-2, 1]]);
        let snf = smith_normal_form(&m);
        assert!(snf.verify());
        assert_eq!(snf.diagonal, vec![1, 1]);

        let m = IntMatrix::from_rows(vec![vec![2, -3]]);
        let snf = smith_normal_form(&m);
        assert!(snf.verify());
        assert_eq!(snf.diagonal, vec![1]);

        let m = IntMatrix::from_rows(vec![vec![2, 4], vec![6, 8]]);
        let snf = smith_normal_form(&m);
        assert!(snf.verify());
        assert_eq!(snf.diagonal, vec![2, 4]);
    }

    #[test]
    fn zero_and_empty_matrices() {
        let m = IntMatrix::zero(2, 3);
        let snf = smith_normal_form(&m);
        assert!(snf.verify());
        assert_eq!(snf.diagonal, vec![0, 0]);

        let m = IntMatrix::zero(0, 2);
        let snf = smith_normal_form(&m);
        assert!(snf.verify());
        assert!(snf.diagonal.is_empty());
    }

    #[test]
    fn random_matrices_verify_and_match_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(1234);
        for _ in 0..100 {
            let rows = rng.gen_range(1..=4);
            let cols = rng.gen_range(1..=4);
            let m = IntMatrix {
                rows,
                cols,
                data: (0..rows * cols).map(|_| rng.gen_range(-9i128..=9)).collect(),
            };
            let snf = smith_normal_form(&m);
            assert!(snf.verify(), "failed on {m:?}");
        }
        for _ in 0..100 {
            let (a, b, c, d) = (
                rng.gen_range(-9i128..=9),
                rng.gen_range(-9i128..=9),
                rng.gen_range(-9i128..=9),
                rng.gen_range(-9i128..=9),
            );
            let m = IntMatrix::from_rows(vec![vec![a, b], vec![c, d]]);
            let snf = smith_normal_form(&m);
            assert!(snf.verify());
            assert_eq!(snf.diagonal, two_by_two_oracle(a, b, c, d), "on {m:?}");
        }
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(IntMatrix::identity(3).det(), 1);
        let m = IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(m.det(), -1);
        let m = IntMatrix::from_rows(vec![vec![2, 0], vec![0, 3]]);
        assert_eq!(m.det(), 6);
        let m = IntMatrix::from_rows(vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(m.det(), 0);
    }
}
