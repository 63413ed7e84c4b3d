//! Dense brute-force references for small graphs.
//!
//! Everything here is O(n²)–O(n³) and capped at [`DENSE_CAP`] nodes. The
//! sparse implementations are validated against these routes; none of them
//! share code with the sparse paths they check.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Node cap for dense construction; prevents accidental O(n³) on large inputs.
pub const DENSE_CAP: usize = 2000;

const JACOBI_MAX_SWEEPS: usize = 64;

/// Row-major square matrix.
#[derive(Debug, Clone)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        DenseMatrix { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "matrix must be square");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        let mut y = vec![0.0; self.n];
        for i in 0..self.n {
            let row = &self.data[i * self.n..(i + 1) * self.n];
            let mut acc = 0.0;
            for (a, b) in row.iter().zip(x) {
                acc += a * b;
            }
            y[i] = acc;
        }
        y
    }

    pub fn matmul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = DenseMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += aik * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn scale(&mut self, s: f64) {
        for v in &mut self.data {
            *v *= s;
        }
    }

    pub fn add_assign(&mut self, other: &DenseMatrix) {
        assert_eq!(self.n, other.n);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
    }

    fn off_diagonal_frobenius(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    let v = self.get(i, j);
                    acc += v * v;
                }
            }
        }
        acc.sqrt()
    }

    fn is_symmetric(&self, tol: f64) -> bool {
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if (self.get(i, j) - self.get(j, i)).abs() > tol {
                    return false;
                }
            }
        }
        true
    }
}

/// Exact 0/1 adjacency matrix of `g`.
pub fn dense_from_graph(g: &Graph) -> Result<DenseMatrix> {
    let n = g.node_count();
    if n > DENSE_CAP {
        return Err(Error::ResourceCap { n, cap: DENSE_CAP });
    }
    let mut m = DenseMatrix::zeros(n);
    for i in 0..n {
        for &j in g.neighbors(i) {
            m.set(i, j, 1.0);
        }
    }
    Ok(m)
}

/// LU factorization with partial pivoting, solving `a·x = b`.
fn lu_solve(a: &DenseMatrix, b: &[f64]) -> Result<Vec<f64>> {
    let n = a.n;
    assert_eq!(b.len(), n);
    let mut m = a.data.clone();
    let mut x = b.to_vec();
    let mut perm: Vec<usize> = (0..n).collect();
    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_val = m[perm[col] * n + col].abs();
        for row in (col + 1)..n {
            let v = m[perm[row] * n + col].abs();
            if v > pivot_val {
                pivot_val = v;
                pivot_row = row;
            }
        }
        if pivot_val == 0.0 {
            return Err(Error::Domain("singular system in dense solve".into()));
        }
        perm.swap(col, pivot_row);
        let p = perm[col];
        let diag = m[p * n + col];
        for row in (col + 1)..n {
            let r = perm[row];
            let factor = m[r * n + col] / diag;
            if factor == 0.0 {
                continue;
            }
            m[r * n + col] = factor;
            for j in (col + 1)..n {
                m[r * n + j] -= factor * m[p * n + j];
            }
            x[r] -= factor * x[p];
        }
    }
    let mut out = vec![0.0; n];
    for col in (0..n).rev() {
        let p = perm[col];
        let mut acc = x[p];
        for j in (col + 1)..n {
            acc -= m[p * n + j] * out[j];
        }
        out[col] = acc / m[p * n + col];
    }
    Ok(out)
}

/// Exact Katz and geometric gain by direct elimination.
pub struct NeumannSolution {
    /// x with (I − δA)x = 1: the exact Katz vector.
    pub katz: Vec<f64>,
    /// A·x: the exact geometric potential gain.
    pub gain: Vec<f64>,
}

/// Solve (I − δA)x = 1 by LU with partial pivoting. The precondition
/// δλ₁ < 1 is checked against a dense eigendecomposition.
pub fn dense_neumann_solve(a: &DenseMatrix, delta: f64) -> Result<NeumannSolution> {
    if delta < 0.0 {
        return Err(Error::Domain(format!("delta must be non-negative, got {delta}")));
    }
    let eig = dense_symmetric_eigen(a, 1e-12)?;
    let lambda1 = eig.eigenvalues[0];
    if delta * lambda1 >= 1.0 {
        return Err(Error::DivergenceRisk { delta, limit: 1.0 / lambda1 });
    }
    let n = a.n;
    let mut system = DenseMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            let v = system.get(i, j) - delta * a.get(i, j);
            system.set(i, j, v);
        }
    }
    let katz = lu_solve(&system, &vec![1.0; n])?;
    let gain = a.matvec(&katz);
    Ok(NeumannSolution { katz, gain })
}

/// exp(A)·1 and A·exp(A)·1 to machine precision.
pub struct ExpmAction {
    pub exp_ones: Vec<f64>,
    pub gain: Vec<f64>,
}

/// Matrix exponential action by scaling-and-squaring over a 30-term Taylor
/// series: s = max(0, ⌈log₂ λ₁⌉ + 2) halvings, then s squarings.
pub fn dense_expm_action(a: &DenseMatrix) -> Result<ExpmAction> {
    let eig = dense_symmetric_eigen(a, 1e-12)?;
    let lambda1 = eig.eigenvalues.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
    let s = if lambda1 > 0.0 {
        (lambda1.log2().ceil() as i64 + 2).max(0) as u32
    } else {
        0
    };
    let mut scaled = a.clone();
    scaled.scale(1.0 / f64::powi(2.0, s as i32));

    let mut exp = DenseMatrix::identity(a.n);
    let mut term = DenseMatrix::identity(a.n);
    for i in 1..=30 {
        term = term.matmul(&scaled);
        term.scale(1.0 / i as f64);
        exp.add_assign(&term);
    }
    for _ in 0..s {
        exp = exp.matmul(&exp);
    }
    let exp_ones = exp.matvec(&vec![1.0; a.n]);
    let gain = a.matvec(&exp_ones);
    Ok(ExpmAction { exp_ones, gain })
}

/// Full eigensystem of a symmetric matrix.
pub struct EigenDecomposition {
    /// Descending.
    pub eigenvalues: Vec<f64>,
    /// Column k is the eigenvector of eigenvalues[k]; columns orthonormal.
    pub eigenvectors: DenseMatrix,
}

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops
/// below `tol` (absolute).
pub fn dense_symmetric_eigen(a: &DenseMatrix, tol: f64) -> Result<EigenDecomposition> {
    if !a.is_symmetric(1e-12) {
        return Err(Error::Domain("eigendecomposition requires a symmetric matrix".into()));
    }
    let n = a.n;
    let mut work = a.clone();
    let mut vecs = DenseMatrix::identity(n);
    let mut converged = false;
    for _sweep in 0..JACOBI_MAX_SWEEPS {
        if work.off_diagonal_frobenius() < tol {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = work.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let app = work.get(p, p);
                let aqq = work.get(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // A ← JᵀAJ restricted to rows/cols p and q
                for k in 0..n {
                    let akp = work.get(k, p);
                    let akq = work.get(k, q);
                    work.set(k, p, c * akp - s * akq);
                    work.set(k, q, s * akp + c * akq);
                }
                for k in 0..n {
                    let apk = work.get(p, k);
                    let aqk = work.get(q, k);
                    work.set(p, k, c * apk - s * aqk);
                    work.set(q, k, s * apk + c * aqk);
                }
                for k in 0..n {
                    let vkp = vecs.get(k, p);
                    let vkq = vecs.get(k, q);
                    vecs.set(k, p, c * vkp - s * vkq);
                    vecs.set(k, q, s * vkp + c * vkq);
                }
            }
        }
    }
    if !converged && work.off_diagonal_frobenius() >= tol {
        return Err(Error::NonConvergence { iterations: JACOBI_MAX_SWEEPS });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| work.get(j, j).total_cmp(&work.get(i, i)));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| work.get(i, i)).collect();
    let mut eigenvectors = DenseMatrix::zeros(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..n {
            eigenvectors.set(row, new_col, vecs.get(row, old_col));
        }
    }
    Ok(EigenDecomposition { eigenvalues, eigenvectors })
}

/// O(n²) fractional ranks by pairwise comparison counting; ties get the
/// average of the positions they span. Independent of the sort-based
/// ranking in the rank module.
pub fn brute_force_rank(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut ranks = vec![0.0; n];
    for i in 0..n {
        let mut less = 0usize;
        let mut equal = 0usize;
        for j in 0..n {
            if j == i {
                continue;
            }
            if values[j] < values[i] {
                less += 1;
            } else if values[j] == values[i] {
                equal += 1;
            }
        }
        ranks[i] = 1.0 + less as f64 + equal as f64 / 2.0;
    }
    ranks
}

/// Reference PageRank: dense power iteration on the full Google matrix
/// G = α·Āᵀ + (1−α)/n·J with Ā the row-normalized adjacency.
pub fn dense_pagerank(a: &DenseMatrix, alpha: f64) -> Result<Vec<f64>> {
    let n = a.n;
    let mut row_sums = vec![0.0; n];
    for i in 0..n {
        for j in 0..n {
            row_sums[i] += a.get(i, j);
        }
    }
    if row_sums.contains(&0.0) {
        return Err(Error::Domain("dense pagerank requires no zero-degree rows".into()));
    }
    let mut x = vec![1.0 / n as f64; n];
    let teleport = (1.0 - alpha) / n as f64;
    for _ in 0..200_000 {
        let mut next = vec![teleport; n];
        for j in 0..n {
            let share = alpha * x[j] / row_sums[j];
            if share == 0.0 {
                continue;
            }
            for i in 0..n {
                next[i] += share * a.get(j, i);
            }
        }
        let change: f64 = next.iter().zip(&x).map(|(a, b)| (a - b).abs()).sum();
        x = next;
        if change < 1e-15 {
            break;
        }
    }
    let total: f64 = x.iter().sum();
    for v in &mut x {
        *v /= total;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    fn triangle() -> Graph {
        Graph::load_edge_list(Cursor::new("1 2\n2 3\n3 1\n")).unwrap().0
    }

    #[test]
    fn dense_adjacency_shapes() {
        let g = triangle();
        let a = dense_from_graph(&g).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 0.0 } else { 1.0 };
                assert_eq!(a.get(i, j), expect);
            }
        }
        let (edge, _) = Graph::load_edge_list(Cursor::new("a b\n")).unwrap();
        let m = dense_from_graph(&edge).unwrap();
        assert_eq!(m.get(0, 1), 1.0);
        assert_eq!(m.get(1, 0), 1.0);
        assert_eq!(m.get(0, 0), 0.0);
    }

    #[test]
    fn neumann_closed_form_on_triangle() {
        let a = dense_from_graph(&triangle()).unwrap();
        let sol = dense_neumann_solve(&a, 0.25).unwrap();
        for v in &sol.katz {
            assert!((v - 2.0).abs() < 1e-12);
        }
        for v in &sol.gain {
            assert!((v - 4.0).abs() < 1e-12);
        }
        let at_zero = dense_neumann_solve(&a, 0.0).unwrap();
        for v in &at_zero.katz {
            assert!((v - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn neumann_residual_small() {
        let a = DenseMatrix::from_rows(&[
            vec![0.0, 1.0, 1.0, 0.0],
            vec![1.0, 0.0, 0.0, 1.0],
            vec![1.0, 0.0, 0.0, 1.0],
            vec![0.0, 1.0, 1.0, 0.0],
        ]);
        let delta = 0.2;
        let sol = dense_neumann_solve(&a, delta).unwrap();
        let ax = a.matvec(&sol.katz);
        for i in 0..4 {
            let residual = sol.katz[i] - delta * ax[i] - 1.0;
            assert!(residual.abs() < 1e-12, "residual {residual}");
        }
    }

    #[test]
    fn neumann_rejects_critical_delta() {
        let a = dense_from_graph(&triangle()).unwrap();
        assert!(matches!(
            dense_neumann_solve(&a, 0.5),
            Err(Error::DivergenceRisk { .. })
        ));
    }

    #[test]
    fn expm_scalar_case() {
        let a = DenseMatrix::from_rows(&[vec![1.5]]);
        let r = dense_expm_action(&a).unwrap();
        assert!((r.exp_ones[0] - 1.5f64.exp()).abs() < 1e-12);
    }

    #[test]
    fn expm_regular_closed_form() {
        let a = dense_from_graph(&triangle()).unwrap();
        let r = dense_expm_action(&a).unwrap();
        let e2 = 2.0f64.exp();
        for v in &r.exp_ones {
            assert!((v - e2).abs() / e2 < 1e-13);
        }
        for v in &r.gain {
            assert!((v - 2.0 * e2).abs() / (2.0 * e2) < 1e-13);
        }
    }

    #[test]
    fn jacobi_known_spectra() {
        let a = dense_from_graph(&triangle()).unwrap();
        let eig = dense_symmetric_eigen(&a, 1e-12).unwrap();
        let expect = [2.0, -1.0, -1.0];
        for (got, want) in eig.eigenvalues.iter().zip(expect) {
            assert!((got - want).abs() < 1e-10, "got {got}, want {want}");
        }

        let (path3, _) = Graph::load_edge_list(Cursor::new("a b\nb c\n")).unwrap();
        let a = dense_from_graph(&path3).unwrap();
        let eig = dense_symmetric_eigen(&a, 1e-12).unwrap();
        let expect = [2.0f64.sqrt(), 0.0, -(2.0f64.sqrt())];
        for (got, want) in eig.eigenvalues.iter().zip(expect) {
            assert!((got - want).abs() < 1e-10);
        }
    }

    #[test]
    fn jacobi_reconstruction() {
        // fixed symmetric 10x10 with pseudo-random entries
        let n = 10;
        let mut a = DenseMatrix::zeros(n);
        let mut state = 88172645463325252u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 1000) as f64 / 500.0 - 1.0
        };
        for i in 0..n {
            for j in i..n {
                let v = next();
                a.set(i, j, v);
                a.set(j, i, v);
            }
        }
        let eig = dense_symmetric_eigen(&a, 1e-12).unwrap();
        // ‖A − VΛVᵀ‖_F
        let mut residual = 0.0;
        for i in 0..n {
            for j in 0..n {
                let mut rec = 0.0;
                for k in 0..n {
                    rec += eig.eigenvectors.get(i, k) * eig.eigenvalues[k] * eig.eigenvectors.get(j, k);
                }
                let d = a.get(i, j) - rec;
                residual += d * d;
            }
        }
        assert!(residual.sqrt() < 1e-10, "reconstruction residual {}", residual.sqrt());
    }

    #[test]
    fn brute_force_rank_examples() {
        assert_eq!(brute_force_rank(&[3.0, 1.0, 2.0]), vec![3.0, 1.0, 2.0]);
        assert_eq!(brute_force_rank(&[5.0, 5.0, 1.0]), vec![2.5, 2.5, 1.0]);
    }

    #[test]
    fn dense_pagerank_uniform_on_complete() {
        let a = dense_from_graph(&triangle()).unwrap();
        let p = dense_pagerank(&a, 0.85).unwrap();
        for v in &p {
            assert!((v - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn cap_enforced() {
        let edges: Vec<(usize, usize)> = (0..2001).map(|i| (i, i + 1)).collect();
        let (g, _) = Graph::from_index_edges(&edges).unwrap();
        assert!(matches!(dense_from_graph(&g), Err(Error::ResourceCap { .. })));
    }

    #[test]
    fn jacobi_lambda_matches_power_iteration() {
        for g in crate::generate::random_corpus(23, 10) {
            let power = crate::spectral::estimate_spectral_radius(&g, 1e-12, 200_000);
            let dense = dense_from_graph(&g).unwrap();
            let jacobi = dense_symmetric_eigen(&dense, 1e-12).unwrap().eigenvalues[0];
            assert!(
                (jacobi - power.lambda1).abs() <= 1e-8 * jacobi,
                "jacobi {jacobi} vs power {}",
                power.lambda1
            );
        }
    }
}
