//! Integer linear algebra: Smith normal form, lattice solving, homology of
//! bounded cochain complexes and mapping cones.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::scalars::CoeffMode;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
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
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch(String::from("ragged rows")));
        }
        Ok(IntMatrix { rows: rows.len(), cols, data: rows.concat() })
    }

    pub fn from_columns(rows: usize, cols: &[Vec<i64>]) -> Result<Self> {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::ShapeMismatch(format!("column {} has length {}", j, c.len())));
            }
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, *v);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: i64) -> Result<()> {
        let e = &mut self.data[i * self.cols + j];
        *e = e.checked_add(v).ok_or(Error::Overflow)?;
        Ok(())
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn reduce(&self, mode: CoeffMode) -> Self {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| mode.reduce(x)).collect() }
    }

    pub fn neg(&self) -> Self {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| -x).collect() }
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let p = a.checked_mul(other.get(k, j)).ok_or(Error::Overflow)?;
                    out.add_to(i, j, p)?;
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!("vector of length {} into {} columns", v.len(), self.cols)));
        }
        let mut out = vec![0i64; self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for (j, x) in v.iter().enumerate() {
                let p = self.get(i, j).checked_mul(*x).ok_or(Error::Overflow)?;
                *o = o.checked_add(p).ok_or(Error::Overflow)?;
            }
        }
        Ok(out)
    }

    /// Block matrix `[self | other]`.
    pub fn hcat(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch(String::from("hcat row count")));
        }
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        Ok(out)
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> Result<usize> {
        Ok(smith_normal_form(self)?.rank)
    }

    /// Rank over the field with two elements.
    pub fn rank_f2(&self) -> usize {
        self.rref_f2().1.len()
    }

    /// Reduced row echelon form mod 2 and its pivot columns.
    fn rref_f2(&self) -> (Vec<Vec<bool>>, Vec<usize>) {
        let mut rows: Vec<Vec<bool>> =
            (0..self.rows).map(|i| self.row(i).iter().map(|x| x.rem_euclid(2) == 1).collect()).collect();
        let mut pivots = Vec::new();
        for c in 0..self.cols {
            let rank = pivots.len();
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][c]) else { continue };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[c] {
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        *x ^= *y;
                    }
                }
            }
            pivots.push(c);
        }
        (rows, pivots)
    }
}

/// A basis of the kernel mod 2, as the columns of the returned matrix.
pub fn kernel_f2(a: &IntMatrix) -> IntMatrix {
    let (rows, pivots) = a.rref_f2();
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
    let mut out = IntMatrix::zeros(a.cols, free.len());
    for (k, f) in free.iter().enumerate() {
        out.set(*f, k, 1);
        for (r, p) in pivots.iter().enumerate() {
            if rows[r][*f] {
                out.set(*p, k, 1);
            }
        }
    }
    out
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{:?}", self.row(i))?;
        }
        f.write_str("]")
    }
}

/// `u * a * v = s` with `s` diagonal, `d_1 | d_2 | ...` and `u`, `v` unimodular.
#[derive(Clone, Debug)]
pub struct Snf {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl Snf {
    /// Whether `b` lies in the column span of the original matrix.
    pub fn spans(&self, b: &[i64]) -> Result<bool> {
        if b.len() != self.u.rows {
            return Err(Error::ShapeMismatch(format!("vector of length {} for {} rows", b.len(), self.u.rows)));
        }
        Ok(b.iter().all(|x| *x == 0) || reduced_rhs(self, b)?.is_some())
    }

    /// Nonzero diagonal entries, all positive.
    pub fn invariants(&self) -> Vec<i64> {
        (0..self.rank).map(|i| self.s.get(i, i)).collect()
    }
}

struct Work {
    a: Vec<Vec<i128>>,
    u: Vec<Vec<i128>>,
    v: Vec<Vec<i128>>,
}

fn ck(x: Option<i128>) -> Result<i128> {
    x.ok_or(Error::Overflow)
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in self.a.iter_mut().chain(self.v.iter_mut()) {
            r.swap(i, j);
        }
    }

    // row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: i128) -> Result<()> {
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m[dst].len() {
                let t = ck(m[src][c].checked_mul(k))?;
                m[dst][c] = ck(m[dst][c].checked_add(t))?;
            }
        }
        Ok(())
    }

    fn add_col(&mut self, dst: usize, src: usize, k: i128) -> Result<()> {
        for m in [&mut self.a, &mut self.v] {
            for r in m.iter_mut() {
                let t = ck(r[src].checked_mul(k))?;
                r[dst] = ck(r[dst].checked_add(t))?;
            }
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.u] {
            for x in m[i].iter_mut() {
                *x = -*x;
            }
        }
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        // ties keep the current pivot, so a divisibility fix cannot cycle
        let mut best: Option<(i128, usize, usize)> = (self.a[t][t] != 0).then(|| (self.a[t][t].abs(), t, t));
        for (i, row) in self.a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if *x != 0 && best.is_none_or(|(b, _, _)| x.abs() < b) {
                    best = Some((x.abs(), i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }
}

fn to_i64_matrix(m: &[Vec<i128>], rows: usize, cols: usize) -> Result<IntMatrix> {
    let mut out = IntMatrix::zeros(rows, cols);
    for (i, r) in m.iter().enumerate() {
        for (j, x) in r.iter().enumerate() {
            out.set(i, j, i64::try_from(*x).map_err(|_| Error::Overflow)?);
        }
    }
    Ok(out)
}

fn identity128(n: usize) -> Vec<Vec<i128>> {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

/// `q` with `|x - q p| <= |p| / 2`.
fn nearest_quotient(x: i128, p: i128) -> i128 {
    let q = x.div_euclid(p);
    let r = x - q * p;
    if 2 * r > p.abs() {
        q + p.signum()
    } else {
        q
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> Result<Snf> {
    let (m, n) = (a.rows, a.cols);
    let mut w = Work {
        a: (0..m).map(|i| a.row(i).iter().map(|&x| i128::from(x)).collect()).collect(),
        u: identity128(m),
        v: identity128(n),
    };
    let mut rank = 0;
    for t in 0..m.min(n) {
        if w.min_entry(t).is_none() {
            break;
        }
        loop {
            // smallest entry of the remaining block becomes the pivot
            let Some((pi, pj)) = w.min_entry(t) else { break };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let p = w.a[t][t];
            let mut dirty = false;
            for i in t + 1..m {
                let q = nearest_quotient(w.a[i][t], p);
                if q != 0 {
                    w.add_row(i, t, -q)?;
                }
                dirty |= w.a[i][t] != 0;
            }
            for j in t + 1..n {
                let q = nearest_quotient(w.a[t][j], p);
                if q != 0 {
                    w.add_col(j, t, -q)?;
                }
                dirty |= w.a[t][j] != 0;
            }
            if dirty {
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| w.a[i][j] % p != 0));
            match bad {
                Some(i) => w.add_row(t, i, 1)?,
                None => break,
            }
        }
        if w.a[t][t] < 0 {
            w.negate_row(t);
        }
        rank += 1;
    }
    Ok(Snf {
        s: to_i64_matrix(&w.a, m, n)?,
        u: to_i64_matrix(&w.u, m, m)?,
        v: to_i64_matrix(&w.v, n, n)?,
        rank,
    })
}

/// An integer solution of `a x = b`, if one exists.
pub fn solve(a: &IntMatrix, b: &[i64]) -> Result<Option<Vec<i64>>> {
    if b.len() != a.rows {
        return Err(Error::ShapeMismatch(format!("rhs of length {} for {} rows", b.len(), a.rows)));
    }
    let snf = smith_normal_form(a)?;
    let Some(y) = reduced_rhs(&snf, b)? else { return Ok(None) };
    let mut x = Vec::with_capacity(a.cols);
    for i in 0..a.cols {
        let mut acc = 0i128;
        for (j, yj) in y.iter().enumerate() {
            acc = ck(acc.checked_add(ck(i128::from(snf.v.get(i, j)).checked_mul(*yj))?))?;
        }
        x.push(i64::try_from(acc).map_err(|_| Error::Overflow)?);
    }
    Ok(Some(x))
}

// y with s y = u b, if it exists
fn reduced_rhs(snf: &Snf, b: &[i64]) -> Result<Option<Vec<i128>>> {
    let mut y = vec![0i128; snf.v.rows];
    for i in 0..snf.u.rows {
        let mut c = 0i128;
        for (j, bj) in b.iter().enumerate() {
            c = ck(c.checked_add(ck(i128::from(snf.u.get(i, j)).checked_mul(i128::from(*bj)))?))?;
        }
        if i < snf.rank {
            let d = i128::from(snf.s.get(i, i));
            if c % d != 0 {
                return Ok(None);
            }
            y[i] = c / d;
        } else if c != 0 {
            return Ok(None);
        }
    }
    Ok(Some(y))
}

/// Whether `b` lies in the column span of `a` over the integers.
pub fn in_image(a: &IntMatrix, b: &[i64]) -> Result<bool> {
    if b.len() != a.rows {
        return Err(Error::ShapeMismatch(format!("rhs of length {} for {} rows", b.len(), a.rows)));
    }
    if b.iter().all(|x| *x == 0) {
        return Ok(true);
    }
    Ok(reduced_rhs(&smith_normal_form(a)?, b)?.is_some())
}

fn norm2(v: &[i64]) -> i128 {
    v.iter().map(|&x| i128::from(x) * i128::from(x)).sum()
}

/// Pairwise reduction of a lattice basis; keeps the span and shortens vectors.
fn size_reduce(cols: &mut [Vec<i64>]) {
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..cols.len() {
            for j in 0..cols.len() {
                let nj = norm2(&cols[j]);
                if i == j || nj == 0 {
                    continue;
                }
                let dot: i128 = cols[i].iter().zip(&cols[j]).map(|(a, b)| i128::from(*a) * i128::from(*b)).sum();
                let q = (2 * dot + nj).div_euclid(2 * nj);
                if q == 0 {
                    continue;
                }
                let Ok(q) = i64::try_from(q) else { continue };
                let cand: Option<Vec<i64>> = cols[i]
                    .iter()
                    .zip(&cols[j])
                    .map(|(a, b)| b.checked_mul(q).and_then(|t| a.checked_sub(t)))
                    .collect();
                if let Some(c) = cand {
                    if norm2(&c) < norm2(&cols[i]) {
                        cols[i] = c;
                        changed = true;
                    }
                }
            }
        }
    }
}

/// A basis of the integer kernel, as the columns of the returned matrix.
pub fn kernel(a: &IntMatrix) -> Result<IntMatrix> {
    let snf = smith_normal_form(a)?;
    let mut cols: Vec<Vec<i64>> = (snf.rank..a.cols).map(|j| snf.v.column(j)).collect();
    size_reduce(&mut cols);
    IntMatrix::from_columns(a.cols, &cols)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroup {
    pub rank: usize,
    /// Invariant factors greater than one, in divisibility order.
    pub torsion: Vec<i64>,
}

impl AbelianGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// `Z^k / im(g)`.
    pub fn cokernel(g: &IntMatrix) -> Result<Self> {
        let snf = smith_normal_form(g)?;
        let torsion = snf.invariants().into_iter().filter(|&d| d > 1).collect();
        Ok(AbelianGroup { rank: g.rows - snf.rank, torsion })
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push(String::from("Z")),
            r => parts.push(format!("Z^{}", r)),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{}", t)));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// `Z^k / {c : k_mat c in im d}` for `k_mat: Z^k -> Z^m` and `d: Z^n -> Z^m`.
pub fn quotient_group(k_mat: &IntMatrix, d: &IntMatrix) -> Result<AbelianGroup> {
    if k_mat.rows != d.rows {
        return Err(Error::ShapeMismatch(String::from("quotient_group target mismatch")));
    }
    let k = k_mat.cols;
    let joint = kernel(&k_mat.hcat(&d.neg())?)?;
    let gens: Vec<Vec<i64>> = (0..joint.cols).map(|j| joint.column(j)[..k].to_vec()).collect();
    AbelianGroup::cokernel(&IntMatrix::from_columns(k, &gens)?)
}

/// A bounded cochain complex `C^lo -> C^{lo+1} -> ...` of free modules.
///
/// `d(n)` maps degree `n` to degree `n + 1`; in `F2` mode everything is read
/// mod 2 and homology ranks are dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplexZ {
    lo: i32,
    dims: Vec<usize>,
    diffs: Vec<IntMatrix>,
    mode: CoeffMode,
}

impl ChainComplexZ {
    /// `diffs[i]` is the differential out of degree `lo + i`; the last degree
    /// maps to zero and needs no entry.
    pub fn new(lo: i32, dims: Vec<usize>, diffs: Vec<IntMatrix>, mode: CoeffMode) -> Result<Self> {
        if diffs.len() + 1 < dims.len() || diffs.len() > dims.len() {
            return Err(Error::ShapeMismatch(format!("{} degrees with {} differentials", dims.len(), diffs.len())));
        }
        let mut diffs: Vec<IntMatrix> = diffs.into_iter().map(|m| m.reduce(mode)).collect();
        for (i, d) in diffs.iter().enumerate() {
            let tgt = dims.get(i + 1).copied().unwrap_or(0);
            if d.rows != tgt || d.cols != dims[i] {
                return Err(Error::ShapeMismatch(format!("differential out of degree {}", lo + i as i32)));
            }
        }
        if diffs.len() < dims.len() {
            diffs.push(IntMatrix::zeros(0, *dims.last().unwrap_or(&0)));
        }
        let c = ChainComplexZ { lo, dims, diffs, mode };
        for n in c.lo..c.hi() {
            if !c.d(n + 1).mul(&c.d(n))?.reduce(mode).is_zero() {
                return Err(Error::InvalidComplex(n));
            }
        }
        Ok(c)
    }

    pub fn zero() -> Self {
        ChainComplexZ { lo: 0, dims: Vec::new(), diffs: Vec::new(), mode: CoeffMode::Z }
    }

    pub fn mode(&self) -> CoeffMode {
        self.mode
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// One past the top degree.
    pub fn hi(&self) -> i32 {
        self.lo + self.dims.len() as i32
    }

    pub fn dim(&self, n: i32) -> usize {
        if n < self.lo || n >= self.hi() {
            0
        } else {
            self.dims[(n - self.lo) as usize]
        }
    }

    pub fn d(&self, n: i32) -> IntMatrix {
        if n < self.lo || n >= self.hi() {
            IntMatrix::zeros(self.dim(n + 1), self.dim(n))
        } else {
            self.diffs[(n - self.lo) as usize].clone()
        }
    }

    fn rank_of(&self, m: &IntMatrix) -> Result<usize> {
        match self.mode {
            CoeffMode::Z => m.rank(),
            CoeffMode::F2 => Ok(m.rank_f2()),
        }
    }

    pub fn homology(&self, n: i32) -> Result<AbelianGroup> {
        let out = self.rank_of(&self.d(n))?;
        let incoming = self.d(n - 1);
        let r_in = self.rank_of(&incoming)?;
        let torsion = match self.mode {
            CoeffMode::Z => smith_normal_form(&incoming)?.invariants().into_iter().filter(|&x| x > 1).collect(),
            CoeffMode::F2 => Vec::new(),
        };
        Ok(AbelianGroup { rank: self.dim(n) - out - r_in, torsion })
    }

    /// Homology in every degree that carries a basis element.
    pub fn all_homology(&self) -> Result<Vec<(i32, AbelianGroup)>> {
        (self.lo..self.hi()).map(|n| Ok((n, self.homology(n)?))).collect()
    }

    pub fn is_acyclic(&self) -> Result<bool> {
        Ok(self.all_homology()?.iter().all(|(_, h)| h.is_zero()))
    }
}

/// A degreewise map `f(n): A^n -> B^n`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: ChainComplexZ,
    pub target: ChainComplexZ,
    lo: i32,
    maps: Vec<IntMatrix>,
}

impl ChainMap {
    /// `maps[i]` acts in degree `lo + i`; degrees outside are zero maps.
    pub fn new(source: ChainComplexZ, target: ChainComplexZ, lo: i32, maps: Vec<IntMatrix>) -> Result<Self> {
        let mode = source.mode;
        if target.mode != mode {
            return Err(Error::ShapeMismatch(String::from("coefficient modes differ")));
        }
        let maps: Vec<IntMatrix> = maps.into_iter().map(|m| m.reduce(mode)).collect();
        let f = ChainMap { source, target, lo, maps };
        for (i, m) in f.maps.iter().enumerate() {
            let n = lo + i as i32;
            if m.rows != f.target.dim(n) || m.cols != f.source.dim(n) {
                return Err(Error::ShapeMismatch(format!("chain map in degree {}", n)));
            }
        }
        let (a, b) = (f.lo.min(f.source.lo).min(f.target.lo) - 1, f.hi().max(f.source.hi()).max(f.target.hi()));
        for n in a..=b {
            let lhs = f.target.d(n).mul(&f.at(n))?;
            let rhs = f.at(n + 1).mul(&f.source.d(n))?;
            let diff = lhs.hcat(&rhs.neg())?;
            let zero = (0..lhs.rows).all(|i| (0..lhs.cols).all(|j| mode.reduce(diff.get(i, j) + diff.get(i, lhs.cols + j)) == 0));
            if !zero {
                return Err(Error::NotChainMap(n));
            }
        }
        Ok(f)
    }

    pub fn identity(c: &ChainComplexZ) -> Self {
        let maps = (c.lo..c.hi()).map(|n| IntMatrix::identity(c.dim(n))).collect();
        ChainMap { source: c.clone(), target: c.clone(), lo: c.lo, maps }
    }

    pub fn zero(source: &ChainComplexZ, target: &ChainComplexZ) -> Self {
        ChainMap { source: source.clone(), target: target.clone(), lo: 0, maps: Vec::new() }
    }

    fn hi(&self) -> i32 {
        self.lo + self.maps.len() as i32
    }

    pub fn at(&self, n: i32) -> IntMatrix {
        if n < self.lo || n >= self.hi() {
            IntMatrix::zeros(self.target.dim(n), self.source.dim(n))
        } else {
            self.maps[(n - self.lo) as usize].clone()
        }
    }

    /// `Cone^n = A^{n+1} + B^n` with `d(a, b) = (-d a, f a + d b)`.
    pub fn cone(&self) -> Result<ChainComplexZ> {
        let (a, b) = (&self.source, &self.target);
        let lo = (a.lo - 1).min(b.lo);
        let hi = a.hi().max(b.hi()).max(a.hi() - 1);
        let dims: Vec<usize> = (lo..hi).map(|n| a.dim(n + 1) + b.dim(n)).collect();
        let mut diffs = Vec::new();
        for n in lo..hi - 1 {
            let (an1, bn, an2, bn1) = (a.dim(n + 1), b.dim(n), a.dim(n + 2), b.dim(n + 1));
            let mut m = IntMatrix::zeros(an2 + bn1, an1 + bn);
            let da = a.d(n + 1);
            let db = b.d(n);
            let f = self.at(n + 1);
            for i in 0..an2 {
                for j in 0..an1 {
                    m.set(i, j, -da.get(i, j));
                }
            }
            for i in 0..bn1 {
                for j in 0..an1 {
                    m.set(an2 + i, j, f.get(i, j));
                }
                for j in 0..bn {
                    m.set(an2 + i, an1 + j, db.get(i, j));
                }
            }
            diffs.push(m);
        }
        ChainComplexZ::new(lo, dims, diffs, a.mode)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiIsoReport {
    pub is_quasi_iso: bool,
    pub source: Vec<(i32, AbelianGroup)>,
    pub target: Vec<(i32, AbelianGroup)>,
    pub cone: Vec<(i32, AbelianGroup)>,
}

/// Quasi-isomorphism test through acyclicity of the mapping cone.
pub fn is_quasi_iso(f: &ChainMap) -> Result<QuasiIsoReport> {
    let cone = f.cone()?.all_homology()?;
    Ok(QuasiIsoReport {
        is_quasi_iso: cone.iter().all(|(_, h)| h.is_zero()),
        source: f.source.all_homology()?,
        target: f.target.all_homology()?,
        cone,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn det(a: &IntMatrix) -> i128 {
        // cofactor expansion, fine for the small sizes used here
        let n = a.rows();
        if n == 0 {
            return 1;
        }
        let mut total = 0i128;
        for j in 0..n {
            let minor: Vec<Vec<i64>> =
                (1..n).map(|i| (0..n).filter(|&c| c != j).map(|c| a.get(i, c)).collect()).collect();
            let minor = IntMatrix { rows: n - 1, cols: n - 1, data: minor.concat() };
            let sign = if j % 2 == 0 { 1 } else { -1 };
            total += sign * i128::from(a.get(0, j)) * det(&minor);
        }
        total
    }

    fn check_snf(a: &IntMatrix) {
        let snf = smith_normal_form(a).unwrap();
        // multiplier entries can get large, so verify in i128
        let wide = |m: &IntMatrix| -> Vec<Vec<i128>> {
            (0..m.rows()).map(|i| m.row(i).iter().map(|&x| i128::from(x)).collect()).collect()
        };
        let mul = |x: &Vec<Vec<i128>>, y: &Vec<Vec<i128>>| -> Vec<Vec<i128>> {
            let cols = y.first().map_or(0, |r| r.len());
            x.iter().map(|r| (0..cols).map(|j| r.iter().zip(y).map(|(a, row)| a * row[j]).sum()).collect()).collect()
        };
        let usv = mul(&mul(&wide(&snf.u), &wide(a)), &wide(&snf.v));
        let s_wide = wide(&snf.s);
        if a.rows() > 0 && a.cols() > 0 {
            assert_eq!(usv, s_wide);
        }
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if i != j {
                    assert_eq!(snf.s.get(i, j), 0);
                }
            }
        }
        let inv = snf.invariants();
        assert!(inv.iter().all(|&d| d > 0));
        for w in inv.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        assert_eq!(det(&snf.u).abs(), 1);
        assert_eq!(det(&snf.v).abs(), 1);
    }

    #[test]
    fn snf_examples() {
        let id = IntMatrix::identity(3);
        assert_eq!(smith_normal_form(&id).unwrap().s, id);
        // rows: (2,4),(6,8) -> (2,4),(0,-4) -> gcd 2, det -8 -> diag(2,4)
        let a = m(&[&[2, 4], &[6, 8]]);
        assert_eq!(smith_normal_form(&a).unwrap().s, m(&[&[2, 0], &[0, 4]]));
        check_snf(&a);
        check_snf(&m(&[&[0, 0, 0], &[0, 6, 10]]));
        check_snf(&IntMatrix::zeros(2, 3));
    }

    #[test]
    fn homology_examples() {
        let c = ChainComplexZ::new(-1, vec![1, 1], vec![m(&[&[1]])], CoeffMode::Z).unwrap();
        assert!(c.is_acyclic().unwrap());
        let c = ChainComplexZ::new(-1, vec![1, 1], vec![m(&[&[2]])], CoeffMode::Z).unwrap();
        assert_eq!(c.homology(0).unwrap(), AbelianGroup { rank: 0, torsion: vec![2] });
        assert!(c.homology(-1).unwrap().is_zero());
        assert_eq!(c.homology(0).unwrap().to_string(), "Z/2");
        let c2 = ChainComplexZ::new(-1, vec![1, 1], vec![m(&[&[2]])], CoeffMode::F2).unwrap();
        assert_eq!(c2.homology(0).unwrap().rank, 1);
        assert_eq!(c2.homology(-1).unwrap().rank, 1);
        let bad = ChainComplexZ::new(0, vec![1, 1, 1], vec![m(&[&[1]]), m(&[&[1]])], CoeffMode::Z);
        assert_eq!(bad, Err(Error::InvalidComplex(0)));
    }

    #[test]
    fn solve_and_quotient() {
        let a = m(&[&[2, 0], &[0, 3]]);
        assert_eq!(solve(&a, &[4, 9]).unwrap(), Some(vec![2, 3]));
        assert_eq!(solve(&a, &[1, 0]).unwrap(), None);
        let k = kernel(&m(&[&[1, 1, 0]])).unwrap();
        assert_eq!(k.cols(), 2);
        assert!(m(&[&[1, 1, 0]]).mul(&k).unwrap().is_zero());
        // Z / {c : c in 2Z} = Z/2
        let g = quotient_group(&IntMatrix::identity(1), &m(&[&[2]])).unwrap();
        assert_eq!(g.to_string(), "Z/2");
        let g = quotient_group(&IntMatrix::identity(2), &IntMatrix::zeros(2, 0)).unwrap();
        assert_eq!(g.to_string(), "Z^2");
    }

    #[test]
    fn quasi_iso_examples() {
        let c = ChainComplexZ::new(0, vec![1, 1], vec![m(&[&[2]])], CoeffMode::Z).unwrap();
        assert!(is_quasi_iso(&ChainMap::identity(&c)).unwrap().is_quasi_iso);
        let acyc = ChainComplexZ::new(0, vec![1, 1], vec![m(&[&[1]])], CoeffMode::Z).unwrap();
        let acyc2 = ChainComplexZ::new(3, vec![2, 2], vec![m(&[&[0, 1], &[1, 0]])], CoeffMode::Z).unwrap();
        assert!(is_quasi_iso(&ChainMap::zero(&acyc, &acyc2)).unwrap().is_quasi_iso);
        assert!(!is_quasi_iso(&ChainMap::zero(&c, &c)).unwrap().is_quasi_iso);
        let bad = ChainMap::new(c.clone(), c.clone(), 0, vec![m(&[&[1]]), m(&[&[0]])]);
        assert!(matches!(bad, Err(Error::NotChainMap(0))));
    }

    fn primary_parts(torsion: &[i64]) -> Vec<i64> {
        let mut out = Vec::new();
        for &t in torsion {
            let (mut t, mut p) = (t, 2);
            while t > 1 {
                let mut q = 1;
                while t % p == 0 {
                    t /= p;
                    q *= p;
                }
                if q > 1 {
                    out.push(q);
                }
                p += 1;
            }
        }
        out.sort_unstable();
        out
    }

    fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
        proptest::collection::vec(-9i64..10, rows * cols).prop_map(move |data| IntMatrix { rows, cols, data })
    }

    proptest! {
        #[test]
        fn snf_random_5x7(a in arb_matrix(5, 7)) {
            check_snf(&a);
        }

        #[test]
        fn snf_random_small(r in 0usize..5, c in 0usize..5, seed in proptest::collection::vec(-6i64..7, 25)) {
            let a = IntMatrix { rows: r, cols: c, data: seed[..r * c].to_vec() };
            check_snf(&a);
            let k = kernel(&a).unwrap();
            prop_assert!(a.mul(&k).unwrap().is_zero());
            prop_assert_eq!(k.cols(), c - a.rank().unwrap());
        }

        #[test]
        fn mod_two_kernel(a in arb_matrix(4, 6)) {
            let k = kernel_f2(&a);
            prop_assert_eq!(k.cols(), 6 - a.rank_f2());
            prop_assert!(a.mul(&k).unwrap().reduce(CoeffMode::F2).is_zero());
            prop_assert_eq!(k.rank_f2(), k.cols());
        }

        #[test]
        fn solve_recovers_images(a in arb_matrix(4, 3), x in proptest::collection::vec(-5i64..6, 3)) {
            let b = a.apply(&x).unwrap();
            let y = solve(&a, &b).unwrap().unwrap();
            prop_assert_eq!(a.apply(&y).unwrap(), b);
        }

        #[test]
        fn cone_of_zero_map_is_shifted_sum(x in arb_matrix(2, 3)) {
            let k = kernel(&x).unwrap();
            let c = ChainComplexZ::new(0, vec![k.cols(), 3, 2], vec![k.clone(), x.clone()], CoeffMode::Z).unwrap();
            let cone = ChainMap::zero(&c, &c).cone().unwrap();
            for n in -1..3 {
                let (h0, h1) = (c.homology(n).unwrap(), c.homology(n + 1).unwrap());
                let got = cone.homology(n).unwrap();
                prop_assert_eq!(got.rank, h0.rank + h1.rank);
                let mut expected = primary_parts(&h0.torsion);
                expected.extend(primary_parts(&h1.torsion));
                expected.sort_unstable();
                prop_assert_eq!(primary_parts(&got.torsion), expected);
            }
        }
    }
}
