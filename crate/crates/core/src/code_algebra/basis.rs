//! Projector construction of the 32-vector code-space basis and the
//! change of basis between Z-gauge and X-gauge collapse states.

use super::{gauge_operator, AlgebraError, N_QUBITS};
use crate::pauli::PauliOperator;

const DIM: usize = 1 << N_QUBITS;

/// Outcome triples of good gauge configurations, in basis order.
const GOOD_TRIPLES: [[i8; 3]; 4] = [[1, 1, 1], [1, -1, -1], [-1, -1, 1], [-1, 1, -1]];

/// Code-space basis vectors (real, length 512) and the 16×16 matrix `U`
/// with `U[r][c] = ⟨φ_c | X-collapse state r⟩`.
#[derive(Debug, Clone)]
pub struct CodeBasis {
    pub vectors: Vec<Vec<f64>>,
    pub u: [[f64; 16]; 16],
}

impl CodeBasis {
    /// `⟨φ_i | v⟩` for a real vector.
    pub fn overlap(&self, i: usize, v: &[f64]) -> f64 {
        self.vectors[i].iter().zip(v).map(|(a, b)| a * b).sum()
    }
}

fn apply_real(p: &PauliOperator, v: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; v.len()];
    for (b, &amp) in v.iter().enumerate() {
        if amp == 0.0 {
            continue;
        }
        let (b2, ph) = p.apply_to_basis(b);
        debug_assert!(ph % 2 == 0, "projector operator must be real");
        out[b2] += if ph == 0 { amp } else { -amp };
    }
    out
}

/// Apply `Π_k (1 + g_k G_k)/2` for gauge indices `first..first+6`.
fn project(v: &[f64], first: usize, outcomes: &[i8; 6]) -> Vec<f64> {
    let mut cur = v.to_vec();
    for (i, &g) in outcomes.iter().enumerate() {
        let gv = apply_real(&gauge_operator(first + i).expect("gauge index"), &cur);
        for (c, x) in cur.iter_mut().zip(gv) {
            *c = 0.5 * (*c + g as f64 * x);
        }
    }
    cur
}

fn outcomes(index: usize) -> [i8; 6] {
    let (a, b) = (GOOD_TRIPLES[index / 4], GOOD_TRIPLES[index % 4]);
    [a[0], a[1], a[2], b[0], b[1], b[2]]
}

fn normalize(v: Vec<f64>) -> Result<Vec<f64>, AlgebraError> {
    let n: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n < 1e-12 {
        return Err(AlgebraError::ZeroProjection);
    }
    Ok(v.into_iter().map(|x| x / n).collect())
}

/// Build `φ_1..φ_32` and `U`.
pub fn build_code_basis() -> Result<CodeBasis, AlgebraError> {
    let all_plus = [1i8; 6];
    let mut vectors = Vec::with_capacity(32);
    for seed in [0usize, DIM - 1] {
        let mut ket = vec![0.0; DIM];
        ket[seed] = 1.0;
        let base = project(&project(&ket, 1, &all_plus), 7, &all_plus);
        for j in 0..16 {
            vectors.push(normalize(project(&base, 1, &outcomes(j)))?);
        }
    }
    let mut u = [[0.0; 16]; 16];
    for (r, row) in u.iter_mut().enumerate() {
        let x_state = normalize(project(&vectors[0], 7, &outcomes(r)))?;
        for (c, entry) in row.iter_mut().enumerate() {
            *entry = vectors[c].iter().zip(&x_state).map(|(a, b)| a * b).sum();
        }
    }
    Ok(CodeBasis { vectors, u })
}

/// Worst-case deviations of a built basis from its defining properties.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisReport {
    /// `max |S φ − φ|` over stabilizers, vectors and components.
    pub stabilizer_residual: f64,
    /// `max |U − U_stored|`.
    pub u_deviation: f64,
    /// `max |U − Uᵀ|`.
    pub u_asymmetry: f64,
    /// `max |UᵀU − I|`.
    pub u_orthogonality: f64,
}

impl CodeBasis {
    pub fn report(&self) -> BasisReport {
        let mut stabilizer_residual = 0.0f64;
        for s in super::stabilizers() {
            for v in &self.vectors {
                let sv = apply_real(&s, v);
                stabilizer_residual = sv
                    .iter()
                    .zip(v)
                    .fold(stabilizer_residual, |m, (a, b)| m.max((a - b).abs()));
            }
        }
        let reference = super::tables::u_matrix_reference();
        let (mut u_deviation, mut u_asymmetry, mut u_orthogonality) = (0.0f64, 0.0f64, 0.0f64);
        for r in 0..16 {
            for c in 0..16 {
                u_deviation = u_deviation.max((self.u[r][c] - reference[r][c]).abs());
                u_asymmetry = u_asymmetry.max((self.u[r][c] - self.u[c][r]).abs());
                let d: f64 = (0..16).map(|k| self.u[k][r] * self.u[k][c]).sum();
                u_orthogonality = u_orthogonality.max((d - if r == c { 1.0 } else { 0.0 }).abs());
            }
        }
        BasisReport {
            stabilizer_residual,
            u_deviation,
            u_asymmetry,
            u_orthogonality,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code_algebra::{stabilizers, tables};

    #[test]
    fn first_vector_matches_printed_kets() {
        let basis = build_code_basis().unwrap();
        for (j, kets) in tables::BASIS_KETS.iter().enumerate() {
            let mut want = vec![0.0; DIM];
            for k in kets {
                want[usize::from_str_radix(k, 2).unwrap()] = 0.5;
            }
            let diff: f64 = basis.vectors[j]
                .iter()
                .zip(&want)
                .map(|(a, b)| (a - b).abs())
                .sum();
            assert!(diff < 1e-12, "phi_{} differs by {diff}", j + 1);
        }
    }

    #[test]
    fn stabilizer_eigenstates() {
        let basis = build_code_basis().unwrap();
        for s in stabilizers() {
            for v in &basis.vectors {
                let sv = apply_real(&s, v);
                let res: f64 = sv
                    .iter()
                    .zip(v)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                assert!(res < 1e-12);
            }
        }
    }

    #[test]
    fn orthonormal() {
        let basis = build_code_basis().unwrap();
        for i in 0..32 {
            for j in 0..32 {
                let d = basis.overlap(i, &basis.vectors[j]);
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((d - want).abs() < 1e-12, "<{i}|{j}> = {d}");
            }
        }
    }

    #[test]
    fn u_matches_reference_and_is_orthogonal() {
        let basis = build_code_basis().unwrap();
        let reference = tables::u_matrix_reference();
        for r in 0..16 {
            for c in 0..16 {
                assert!(
                    (basis.u[r][c] - reference[r][c]).abs() < 1e-12,
                    "U[{r}][{c}]"
                );
            }
            for r2 in 0..16 {
                let d: f64 = (0..16).map(|c| basis.u[r][c] * basis.u[r2][c]).sum();
                assert!((d - if r == r2 { 1.0 } else { 0.0 }).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn gauge_operators_act_as_gauge_qubit_paulis() {
        let basis = build_code_basis().unwrap();
        let mut bad = Vec::new();
        for k in 1..=12 {
            let gk = crate::code_algebra::gauge_operator(k).unwrap();
            let rep = crate::code_algebra::gauge_rep(k).unwrap();
            for b in 0..32 {
                let gv = apply_real(&gk, &basis.vectors[b]);
                let (c, ph) = rep.apply_to_basis(b % 16);
                let want_idx = c + 16 * (b / 16);
                let want = if ph == 0 { 1.0 } else { -1.0 };
                let got = basis.overlap(want_idx, &gv);
                if (got - want).abs() > 1e-12 {
                    bad.push(format!("G{k} on phi_{}: {got}", b + 1));
                }
            }
        }
        assert!(bad.is_empty(), "{bad:?}");
    }
}
