use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sim::{circuit_unitary, StateVector, UNITARY_QUBIT_LIMIT};
use crate::tree::TreeShape;
use crate::walk::{basis_index, build_walk_operator, CoinSymbol, OracleSpec};

/// One spectral line: (eigenphase in (-pi, pi], squared overlap with the
/// initial state).
pub type SpectralLine = (f64, f64);

/// Initial state for evaluation: the tail-edge superposition
/// (|0,right> + |1,down> + |1,left>) / sqrt(3).
///
/// The nominal |0>|down> start is rejected by calibration: it sits on a
/// 2-cycle between |0,down> and |0,left> whose eigenphase-0 mass is 0.5 for
/// every leaf assignment, so it carries no formula information. The
/// tail-edge superposition separates the value classes at every tested
/// size; see the calibration tests.
pub fn initial_state(shape: TreeShape) -> StateVector {
    let n = shape.levels() + 3;
    let mut s = StateVector::zero(n);
    let amp = Complex64::new(1.0 / 3.0f64.sqrt(), 0.0);
    let amps = s.amplitudes_mut();
    amps[0] = Complex64::ZERO;
    amps[basis_index(shape, 0, CoinSymbol::Right)] = amp;
    amps[basis_index(shape, 1, CoinSymbol::Down)] = amp;
    amps[basis_index(shape, 1, CoinSymbol::Left)] = amp;
    s
}

/// Unitary of the full walk operator for an exact leaf assignment.
pub fn walk_unitary(shape: TreeShape, leaves: &[bool]) -> Result<DMatrix<Complex64>> {
    let total = shape.levels() + 3;
    if total > UNITARY_QUBIT_LIMIT {
        return Err(Error::SizeLimit {
            qubits: total,
            limit: UNITARY_QUBIT_LIMIT,
        });
    }
    let circ = build_walk_operator(shape, &OracleSpec::Exact(leaves.to_vec()))?;
    circuit_unitary(&circ)
}

/// Cyclic Jacobi eigensolver for a Hermitian matrix. Slower than a
/// tridiagonalization approach but accurate to machine precision even on
/// heavily degenerate spectra, which the walk operators have.
fn hermitian_eigen(a: &DMatrix<Complex64>) -> (Vec<f64>, DMatrix<Complex64>) {
    let n = a.nrows();
    let mut m = a.clone();
    let mut v = DMatrix::<Complex64>::identity(n, n);
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += m[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() < 1e-13 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let g = m[(p, q)];
                let mag = g.norm();
                if mag < 1e-300 {
                    continue;
                }
                let phase = g / mag;
                let tau = (m[(q, q)].re - m[(p, p)].re) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let sp = phase * (t * c);
                for i in 0..n {
                    let mip = m[(i, p)];
                    let miq = m[(i, q)];
                    m[(i, p)] = mip * c - miq * sp.conj();
                    m[(i, q)] = mip * sp + miq * c;
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * c - viq * sp.conj();
                    v[(i, q)] = vip * sp + viq * c;
                }
                for j in 0..n {
                    let mpj = m[(p, j)];
                    let mqj = m[(q, j)];
                    m[(p, j)] = mpj * c - mqj * sp;
                    m[(q, j)] = mpj * sp.conj() + mqj * c;
                }
            }
        }
    }
    ((0..n).map(|i| m[(i, i)].re).collect(), v)
}

/// Eigenphases of a unitary with squared overlaps of `psi0` against an
/// orthonormal eigenbasis.
///
/// Two-stage Hermitian decomposition: diagonalize H = (U + U*)/2, then
/// split each degenerate cos-cluster with K = (U - U*)/2i restricted to the
/// cluster. Both solves are Hermitian, so the combined eigenbasis is
/// orthonormal and the overlaps sum to 1.
pub fn eigenphase_overlaps(
    u: &DMatrix<Complex64>,
    psi0: &[Complex64],
) -> Vec<SpectralLine> {
    let dim = u.nrows();
    let half = Complex64::new(0.5, 0.0);
    let halfi = Complex64::new(0.0, -0.5);
    let h = (u + u.adjoint()) * half;
    let k = (u - u.adjoint()) * halfi;
    let (h_evals, h_evecs) = hermitian_eigen(&h);

    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| h_evals[a].partial_cmp(&h_evals[b]).unwrap());

    let psi = DVector::from_column_slice(psi0);
    let mut lines = Vec::with_capacity(dim);
    let tol = 1e-8;
    let mut start = 0;
    while start < dim {
        let mut end = start + 1;
        while end < dim && (h_evals[order[end]] - h_evals[order[end - 1]]).abs() < tol {
            end += 1;
        }
        let cos_phi = h_evals[order[start]];
        let cols: Vec<usize> = order[start..end].to_vec();
        let mut basis = DMatrix::<Complex64>::zeros(dim, cols.len());
        for (j, &c) in cols.iter().enumerate() {
            basis.set_column(j, &h_evecs.column(c));
        }
        // K restricted to the cluster is Hermitian; its eigenvalues are the
        // sines of the cluster's eigenphases.
        let kk = basis.adjoint() * &k * &basis;
        let (k_evals, k_evecs) = hermitian_eigen(&kk);
        let vecs = &basis * &k_evecs;
        for j in 0..cols.len() {
            let sin_phi = k_evals[j];
            let phase = sin_phi.atan2(cos_phi);
            let overlap = (vecs.column(j).adjoint() * &psi)[(0, 0)].norm_sqr();
            lines.push((phase, overlap));
        }
        start = end;
    }
    lines
}

/// Distance of a phase from 0 on the circle.
pub fn phase_distance(phase: f64) -> f64 {
    let p = phase.abs() % (2.0 * std::f64::consts::PI);
    p.min(2.0 * std::f64::consts::PI - p)
}

/// Total overlap mass within `window` of eigenphase 0.
pub fn zero_phase_mass(lines: &[SpectralLine], window: f64) -> f64 {
    lines
        .iter()
        .filter(|(p, _)| phase_distance(*p) <= window)
        .map(|(_, o)| o)
        .sum()
}

/// Spectrum of the walk operator seen from the standard initial state.
pub fn walk_spectrum(shape: TreeShape, leaves: &[bool]) -> Result<Vec<SpectralLine>> {
    let u = walk_unitary(shape, leaves)?;
    let psi0 = initial_state(shape);
    Ok(eigenphase_overlaps(&u, psi0.amplitudes()))
}
