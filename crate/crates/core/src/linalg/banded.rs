use super::LinalgError;

/// Square band matrix with `kl` sub- and `ku` superdiagonals, plus a sparse
/// set of corner entries outside the band (the wrap-around couplings of a
/// periodic stencil).
#[derive(Debug, Clone, PartialEq)]
pub struct BandedMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    band: Vec<f64>,
    corners: Vec<(usize, usize, f64)>,
}

impl BandedMatrix {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        Self { n, kl, ku, band: vec![0.0; n * (kl + ku + 1)], corners: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, 0, 0);
        m.band.iter_mut().for_each(|d| *d = 1.0);
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn bandwidths(&self) -> (usize, usize) {
        (self.kl, self.ku)
    }

    pub fn is_cyclic(&self) -> bool {
        !self.corners.is_empty()
    }

    fn in_band(&self, i: usize, j: usize) -> bool {
        j + self.kl >= i && j <= i + self.ku
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        i * (self.kl + self.ku + 1) + (j + self.kl - i)
    }

    /// Add `v` to entry (i, j); entries outside the band become corners.
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        assert!(i < self.n && j < self.n, "index ({i}, {j}) out of range");
        if self.in_band(i, j) {
            let k = self.idx(i, j);
            self.band[k] += v;
        } else if let Some(e) = self.corners.iter_mut().find(|e| e.0 == i && e.1 == j) {
            e.2 += v;
        } else {
            self.corners.push((i, j, v));
        }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        if self.in_band(i, j) {
            self.band[self.idx(i, j)]
        } else {
            self.corners
                .iter()
                .find(|e| e.0 == i && e.1 == j)
                .map_or(0.0, |e| e.2)
        }
    }

    /// Entries of row `i` as (column, value), band first.
    pub fn row_entries(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let lo = i.saturating_sub(self.kl);
        let hi = (i + self.ku).min(self.n - 1);
        (lo..=hi)
            .map(move |j| (j, self.band[self.idx(i, j)]))
            .chain(self.corners.iter().filter(move |e| e.0 == i).map(|e| (e.1, e.2)))
    }

    /// Multiply row `i` by `s`.
    pub fn scale_row(&mut self, i: usize, s: f64) {
        let w = self.kl + self.ku + 1;
        self.band[i * w..(i + 1) * w].iter_mut().for_each(|v| *v *= s);
        self.corners.iter_mut().filter(|e| e.0 == i).for_each(|e| e.2 *= s);
    }

    /// Multiply every column `j` by `s[j]`.
    pub fn scale_columns(&mut self, s: &[f64]) {
        for i in 0..self.n {
            let lo = i.saturating_sub(self.kl);
            let hi = (i + self.ku).min(self.n - 1);
            for (j, sj) in s.iter().enumerate().take(hi + 1).skip(lo) {
                let k = self.idx(i, j);
                self.band[k] *= sj;
            }
        }
        self.corners.iter_mut().for_each(|e| e.2 *= s[e.1]);
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.row_entries(i).map(|(j, v)| v * x[j]).sum())
            .collect()
    }

    /// First row violating strict diagonal dominance, if any.
    pub fn dominance_violation(&self) -> Option<usize> {
        (0..self.n).find(|&i| {
            let off: f64 = self.row_entries(i).filter(|e| e.0 != i).map(|e| e.1.abs()).sum();
            self.get(i, i).abs() <= off
        })
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut d = vec![vec![0.0; self.n]; self.n];
        for (i, row) in d.iter_mut().enumerate() {
            for (j, v) in self.row_entries(i) {
                row[j] += v;
            }
        }
        d
    }

    /// LU factorization with partial pivoting; corner entries handled by a
    /// low-rank correction.
    pub fn factor(&self) -> Result<Factorization, LinalgError> {
        let lu = BandLu::new(self)?;
        let mut rows: Vec<usize> = self.corners.iter().map(|e| e.0).collect();
        rows.sort_unstable();
        rows.dedup();
        if rows.is_empty() {
            return Ok(Factorization { lu, rows, corners: Vec::new(), z: Vec::new(), cap: None });
        }
        let corners: Vec<(usize, usize, f64)> = self
            .corners
            .iter()
            .map(|&(i, j, v)| (rows.binary_search(&i).unwrap(), j, v))
            .collect();
        let z: Vec<Vec<f64>> = rows
            .iter()
            .map(|&r| {
                let mut e = vec![0.0; self.n];
                e[r] = 1.0;
                lu.solve(&mut e);
                e
            })
            .collect();
        let k = rows.len();
        let mut cap = vec![vec![0.0; k]; k];
        for (l, row) in cap.iter_mut().enumerate() {
            row[l] = 1.0;
        }
        for &(l, j, v) in &corners {
            for (m, zm) in z.iter().enumerate() {
                cap[l][m] += v * zm[j];
            }
        }
        let cap = DenseLu::new(cap)?;
        Ok(Factorization { lu, rows, corners, z, cap: Some(cap) })
    }
}

/// Solve `m x = rhs`.
pub fn banded_solve(m: &BandedMatrix, rhs: &[f64]) -> Result<Vec<f64>, LinalgError> {
    m.factor()?.solve(rhs)
}

/// Reusable factorization of a [`BandedMatrix`].
#[derive(Debug, Clone)]
pub struct Factorization {
    lu: BandLu,
    rows: Vec<usize>,
    corners: Vec<(usize, usize, f64)>,
    z: Vec<Vec<f64>>,
    cap: Option<DenseLu>,
}

impl Factorization {
    pub fn dim(&self) -> usize {
        self.lu.n
    }

    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>, LinalgError> {
        if rhs.len() != self.lu.n {
            return Err(LinalgError::Dimension(format!(
                "rhs length {} for a system of size {}",
                rhs.len(),
                self.lu.n
            )));
        }
        let mut y = rhs.to_vec();
        self.lu.solve(&mut y);
        if let Some(cap) = &self.cap {
            let mut t = vec![0.0; self.rows.len()];
            for &(l, j, v) in &self.corners {
                t[l] += v * y[j];
            }
            cap.solve(&mut t);
            for (tl, zl) in t.iter().zip(&self.z) {
                for (yi, zi) in y.iter_mut().zip(zl) {
                    *yi -= tl * zi;
                }
            }
        }
        Ok(y)
    }
}

/// Band LU with row pivoting. Storage is column-major with `2kl + ku + 1`
/// rows per column; entry (i, j) sits at row `kl + ku + i - j`.
#[derive(Debug, Clone)]
struct BandLu {
    n: usize,
    kl: usize,
    ku: usize,
    ab: Vec<f64>,
    piv: Vec<usize>,
}

impl BandLu {
    fn ld(&self) -> usize {
        2 * self.kl + self.ku + 1
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> usize {
        (self.kl + self.ku + i - j) + j * self.ld()
    }

    fn new(m: &BandedMatrix) -> Result<Self, LinalgError> {
        let (n, kl, ku) = (m.n, m.kl, m.ku);
        let mut lu = Self { n, kl, ku, ab: vec![0.0; (2 * kl + ku + 1) * n], piv: vec![0; n] };
        for i in 0..n {
            for j in i.saturating_sub(kl)..=(i + ku).min(n - 1) {
                let k = lu.at(i, j);
                lu.ab[k] = m.band[m.idx(i, j)];
            }
        }
        let scale = m.band.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let tiny = scale * f64::EPSILON * n as f64;
        let uw = kl + ku;
        for k in 0..n {
            let last = (k + kl).min(n - 1);
            let mut p = k;
            let mut best = lu.ab[lu.at(k, k)].abs();
            for i in k + 1..=last {
                let v = lu.ab[lu.at(i, k)].abs();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if !(best > tiny) {
                return Err(LinalgError::Singular { row: k });
            }
            lu.piv[k] = p;
            let jend = (k + uw).min(n - 1);
            if p != k {
                for j in k..=jend {
                    let (a, b) = (lu.at(k, j), lu.at(p, j));
                    lu.ab.swap(a, b);
                }
            }
            let d = lu.ab[lu.at(k, k)];
            for i in k + 1..=last {
                let ik = lu.at(i, k);
                let l = lu.ab[ik] / d;
                lu.ab[ik] = l;
                if l != 0.0 {
                    for j in k + 1..=jend {
                        let (ij, kj) = (lu.at(i, j), lu.at(k, j));
                        lu.ab[ij] -= l * lu.ab[kj];
                    }
                }
            }
        }
        Ok(lu)
    }

    fn solve(&self, b: &mut [f64]) {
        let (n, kl) = (self.n, self.kl);
        let uw = self.kl + self.ku;
        for k in 0..n {
            let p = self.piv[k];
            if p != k {
                b.swap(k, p);
            }
            let bk = b[k];
            for i in k + 1..=(k + kl).min(n - 1) {
                b[i] -= self.ab[self.at(i, k)] * bk;
            }
        }
        for k in (0..n).rev() {
            let mut r = b[k];
            for j in k + 1..=(k + uw).min(n - 1) {
                r -= self.ab[self.at(k, j)] * b[j];
            }
            b[k] = r / self.ab[self.at(k, k)];
        }
    }
}

/// Small dense LU with partial pivoting (the Woodbury capacitance matrix).
#[derive(Debug, Clone)]
struct DenseLu {
    a: Vec<Vec<f64>>,
    piv: Vec<usize>,
}

impl DenseLu {
    fn new(mut a: Vec<Vec<f64>>) -> Result<Self, LinalgError> {
        let n = a.len();
        let mut piv = vec![0; n];
        for k in 0..n {
            let p = (k..n)
                .max_by(|&x, &y| a[x][k].abs().total_cmp(&a[y][k].abs()))
                .unwrap();
            if a[p][k] == 0.0 {
                return Err(LinalgError::Singular { row: k });
            }
            a.swap(k, p);
            piv[k] = p;
            for i in k + 1..n {
                let l = a[i][k] / a[k][k];
                a[i][k] = l;
                for j in k + 1..n {
                    a[i][j] -= l * a[k][j];
                }
            }
        }
        Ok(Self { a, piv })
    }

    fn solve(&self, b: &mut [f64]) {
        let n = self.a.len();
        for k in 0..n {
            b.swap(k, self.piv[k]);
        }
        for k in 0..n {
            for i in k + 1..n {
                b[i] -= self.a[i][k] * b[k];
            }
        }
        for k in (0..n).rev() {
            let mut r = b[k];
            for j in k + 1..n {
                r -= self.a[k][j] * b[j];
            }
            b[k] = r / self.a[k][k];
        }
    }
}
