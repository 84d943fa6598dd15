//! Smith normal form over the integers and abelian invariants of presentations.

use alloc::vec;
use alloc::vec::Vec;

use super::RelatorSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { rows: rows.len(), cols, data: rows.concat() }
    }

    /// Shape for a matrix with a known column count that may have no rows.
    pub fn from_rows_with_cols(rows: &[Vec<i64>], cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { rows: rows.len(), cols, data: rows.concat() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }

    /// Panics if an entry of the product overflows `i64`.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let x: i128 = (0..self.cols).map(|k| i128::from(self[(i, k)]) * i128::from(other[(k, j)])).sum();
                out[(i, j)] = i64::try_from(x).expect("matrix product overflows i64");
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> i128 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m: Vec<Vec<i128>> = self.to_rows().into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if m[k][k] == 0 {
                let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else { return 0 };
                m.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
                }
            }
            prev = m[k][k];
        }
        if n == 0 {
            1
        } else {
            sign * m[n - 1][n - 1]
        }
    }
}

impl core::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

/// `u * a * v == d`, `d` diagonal with a nonnegative divisibility chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d[(i, i)]).collect()
    }
}

/// Alternates row and column Hermite reductions until the matrix is diagonal,
/// then repairs the divisibility chain with 2x2 gcd/lcm transforms. Reducing
/// above-pivot entries modulo the pivot keeps `u` and `v` small; the work is
/// done in `i128` and the result must fit `i64` again.
pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let (rows, cols) = (a.rows, a.cols);
    let mut d: Vec<Vec<i128>> = a.to_rows().into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect();
    let mut u = wide_identity(rows);
    let mut v = wide_identity(cols);
    let diagonal = |d: &Vec<Vec<i128>>| d.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, &x)| i == j || x == 0));

    while !diagonal(&d) {
        hermite_rows(&mut d, &mut u);
        if diagonal(&d) {
            break;
        }
        // column pass = row pass on the transposes
        let mut dt = transpose(&d, cols);
        let mut vt = transpose(&v, cols);
        hermite_rows(&mut dt, &mut vt);
        d = transpose(&dt, rows);
        v = transpose(&vt, cols);
    }

    let k = rows.min(cols);
    for i in 0..k {
        for j in i + 1..k {
            let (p, q) = (d[i][i], d[j][j]);
            if p == 0 && q != 0 {
                d.swap(i, j);
                u.swap(i, j);
                for r in d.iter_mut().chain(v.iter_mut()) {
                    r.swap(i, j);
                }
            } else if p != 0 && q % p != 0 {
                // diag(p, q) -> diag(g, pq/g)
                let (g, x, y) = ext_gcd(p, q);
                let (a, b) = (p / g, q / g);
                combine(&mut d, i, j, [x, y, -b, a]);
                combine(&mut u, i, j, [x, y, -b, a]);
                combine_cols(&mut d, i, j, [1, 1, -y * b, x * a]);
                combine_cols(&mut v, i, j, [1, 1, -y * b, x * a]);
            }
        }
        if d[i][i] < 0 {
            for x in d[i].iter_mut().chain(u[i].iter_mut()) {
                *x = -*x;
            }
        }
    }
    // Rows of `u` past the rank span the left kernel and columns of `v` the
    // right kernel; nothing above bounds them, so normalize them separately.
    let rank = (0..k).take_while(|&i| d[i][i] != 0).count();
    reduce_kernel(&mut u, rank);
    let mut vt = transpose(&v, cols);
    reduce_kernel(&mut vt, rank);
    v = transpose(&vt, cols);
    Smith { u: narrow(&u, rows), d: narrow(&d, cols), v: narrow(&v, cols) }
}

/// Puts rows `rank..` of `m` (whose images under the diagonal form vanish)
/// into Hermite form and reduces rows `..rank` modulo them.
fn reduce_kernel(m: &mut [Vec<i128>], rank: usize) {
    let (head, kernel) = m.split_at_mut(rank);
    let n = kernel.len();
    let mut scratch = wide_identity(n);
    hermite_rows(kernel, &mut scratch);
    for row in kernel.iter() {
        let Some(j) = row.iter().position(|&x| x != 0) else { break };
        let p = row[j];
        for h in head.iter_mut() {
            let q = h[j].div_euclid(p);
            if q != 0 {
                for (x, &y) in h.iter_mut().zip(row) {
                    *x -= q * y;
                }
            }
        }
    }
}

fn wide_identity(n: usize) -> Vec<Vec<i128>> {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

fn transpose(m: &[Vec<i128>], cols: usize) -> Vec<Vec<i128>> {
    (0..cols).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

fn narrow(m: &[Vec<i128>], cols: usize) -> IntMatrix {
    let rows: Vec<Vec<i64>> =
        m.iter().map(|r| r.iter().map(|&x| i64::try_from(x).expect("Smith transform entry exceeds i64")).collect()).collect();
    IntMatrix::from_rows_with_cols(&rows, cols)
}

// (row a, row b) <- (m0 a + m1 b, m2 a + m3 b)
fn combine(m: &mut [Vec<i128>], a: usize, b: usize, [m0, m1, m2, m3]: [i128; 4]) {
    for j in 0..m[a].len() {
        let (x, y) = (m[a][j], m[b][j]);
        m[a][j] = m0 * x + m1 * y;
        m[b][j] = m2 * x + m3 * y;
    }
}

fn combine_cols(m: &mut [Vec<i128>], a: usize, b: usize, [m0, m1, m2, m3]: [i128; 4]) {
    for r in m.iter_mut() {
        let (x, y) = (r[a], r[b]);
        r[a] = m0 * x + m1 * y;
        r[b] = m2 * x + m3 * y;
    }
}

/// Row Hermite form of `d`, mirrored on `u`: echelon with positive pivots and
/// entries above each pivot reduced into `[0, pivot)`.
fn hermite_rows(d: &mut [Vec<i128>], u: &mut [Vec<i128>]) {
    let rows = d.len();
    let cols = d.first().map_or(0, Vec::len);
    let mut r = 0;
    for j in 0..cols {
        if r == rows {
            break;
        }
        for i in r + 1..rows {
            if d[i][j] == 0 {
                continue;
            }
            if d[r][j] == 0 {
                d.swap(r, i);
                u.swap(r, i);
                continue;
            }
            let (p, q) = (d[r][j], d[i][j]);
            let m = if q % p == 0 {
                [1, 0, -(q / p), 1]
            } else {
                let (g, x, y) = ext_gcd(p, q);
                [x, y, -(q / g), p / g]
            };
            combine(d, r, i, m);
            combine(u, r, i, m);
        }
        if d[r][j] == 0 {
            continue;
        }
        if d[r][j] < 0 {
            for x in d[r].iter_mut().chain(u[r].iter_mut()) {
                *x = -*x;
            }
        }
        let p = d[r][j];
        for i in 0..r {
            let q = d[i][j].div_euclid(p);
            if q != 0 {
                combine(d, i, r, [1, -q, 0, 1]);
                combine(u, i, r, [1, -q, 0, 1]);
            }
        }
        r += 1;
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1, mut s0, mut s1, mut t0, mut t1) = (a, b, 1, 0, 0, 1);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// A finitely generated abelian group `Z^free_rank + Z/d1 + ... + Z/dk`, `d1 | d2 | ...`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AbelianInvariants {
    pub free_rank: u32,
    pub torsion: Vec<u64>,
}

impl AbelianInvariants {
    pub fn free(rank: u32) -> Self {
        AbelianInvariants { free_rank: rank, torsion: Vec::new() }
    }

    /// Invariants of `Z^rank / <rows>`.
    pub fn of_relation_matrix(rank: u32, m: &IntMatrix) -> Self {
        let diag = smith_normal_form(m).diagonal();
        let nonzero: Vec<u64> = diag.iter().filter(|&&x| x != 0).map(|&x| x.unsigned_abs()).collect();
        AbelianInvariants { free_rank: rank - nonzero.len() as u32, torsion: nonzero.into_iter().filter(|&x| x > 1).collect() }
    }

    /// Direct sum.
    pub fn sum(&self, other: &AbelianInvariants) -> AbelianInvariants {
        let mut torsion: Vec<u64> = self.torsion.iter().chain(&other.torsion).copied().collect();
        // re-normalize the torsion part through Smith form of the diagonal
        let n = torsion.len();
        if n > 1 {
            let mut m = IntMatrix::zeros(n, n);
            for (i, &x) in torsion.iter().enumerate() {
                m[(i, i)] = x as i64;
            }
            torsion = smith_normal_form(&m).diagonal().into_iter().map(|x| x as u64).filter(|&x| x > 1).collect();
        }
        AbelianInvariants { free_rank: self.free_rank + other.free_rank, torsion }
    }
}

/// Abelianization of `<x1..x_rank | finite relators, schemes>`.
///
/// Scheme members are commutators, so their exponent vectors vanish and they
/// contribute nothing; only the finite part enters the relation matrix.
pub fn abelianization(rank: u32, relators: &RelatorSet) -> AbelianInvariants {
    let rows: Vec<Vec<i64>> = relators.finite().iter().map(|w| w.exponent_vector()).collect();
    let m = IntMatrix::from_rows_with_cols(&rows, rank as usize);
    AbelianInvariants::of_relation_matrix(rank, &m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotient::CommutatorScheme;
    use crate::word::Word;

    fn check(a: &IntMatrix) -> Smith {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert_eq!(s.u.determinant().abs(), 1);
        assert_eq!(s.v.determinant().abs(), 1);
        s
    }

    #[test]
    fn examples() {
        let s = check(&IntMatrix::from_rows(&[vec![1, 0, 0, 0]]));
        assert_eq!(s.d, IntMatrix::from_rows(&[vec![1, 0, 0, 0]]));
        let s = check(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.diagonal(), vec![1, 6]);
        let s = check(&IntMatrix::zeros(2, 2));
        assert_eq!(s.d, IntMatrix::zeros(2, 2));
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.v, IntMatrix::identity(2));
        let s = check(&IntMatrix::zeros(0, 3));
        assert_eq!(s.v, IntMatrix::identity(3));
    }

    #[test]
    fn divisibility_fix_up() {
        let s = check(&IntMatrix::from_rows(&[vec![4, 0], vec![0, 6]]));
        assert_eq!(s.diagonal(), vec![2, 12]);
        let s = check(&IntMatrix::from_rows(&[vec![-3, 5, 7], vec![2, -4, 0]]));
        assert_eq!(s.diagonal(), vec![1, 2]);
    }

    #[test]
    fn determinant() {
        assert_eq!(IntMatrix::from_rows(&[vec![2, 1], vec![7, 4]]).determinant(), 1);
        assert_eq!(IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).determinant(), -1);
        assert_eq!(IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]).determinant(), 0);
        assert_eq!(IntMatrix::from_rows(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 1]]).determinant(), 0);
    }

    #[test]
    fn abelianization_examples() {
        let w = |s: &str, r| Word::parse(s, r).unwrap();
        let r = RelatorSet::new(4, vec![w("x1", 4)], vec![]).unwrap();
        assert_eq!(abelianization(4, &r), AbelianInvariants::free(3));

        let scheme = CommutatorScheme::new(w("x1", 2), w("x2", 2)).unwrap();
        let r = RelatorSet::new(2, vec![], vec![scheme]).unwrap();
        assert_eq!(abelianization(2, &r), AbelianInvariants::free(2));

        let r = RelatorSet::new(2, vec![w("x1 x1", 2), w("x2", 2)], vec![]).unwrap();
        assert_eq!(abelianization(2, &r), AbelianInvariants { free_rank: 0, torsion: vec![2] });

        assert_eq!(abelianization(5, &RelatorSet::empty(5)), AbelianInvariants::free(5));
    }

    #[test]
    fn invariant_sums() {
        let a = AbelianInvariants { free_rank: 1, torsion: vec![2] };
        let b = AbelianInvariants { free_rank: 2, torsion: vec![3] };
        assert_eq!(a.sum(&b), AbelianInvariants { free_rank: 3, torsion: vec![6] });
    }
}
