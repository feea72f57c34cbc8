//! Finite algebra of the 3×3 Bacon-Shor subsystem code.
//!
//! Qubits are laid out row-major on a 3×3 grid (1 2 3 / 4 5 6 / 7 8 9).
//! The twelve gauge operators are vertical `ZZ` pairs (`G1..G6`) and
//! horizontal `XX` pairs (`G7..G12`). Products of three of them give the
//! four stabilizer generators, whose signs select one of sixteen error
//! subspaces `𝒬_ℓ`. Inside each subspace the state factorizes into a logical
//! qubit and four gauge qubits; this module provides the bookkeeping that
//! maps physical Paulis to `(Q_ℓ, logical, gauge)` triples.

mod basis;
mod gf2;
pub mod tables;

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pauli::{PauliKind, PauliOperator};

pub use basis::{build_code_basis, BasisReport, CodeBasis};
use gf2::SpanSolver;

/// Number of physical qubits.
pub const N_QUBITS: u8 = 9;
/// Number of gauge qubits inside each error subspace.
pub const N_GAUGE_QUBITS: u8 = 4;
/// Number of gauge operators `G_k`.
pub const N_GAUGE_OPS: usize = 12;
/// Number of error subspaces.
pub const N_SUBSPACES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("expected a single-qubit Pauli, got {0}")]
    NotSingleQubit(String),
    #[error("gauge index {0} outside 1..=12")]
    BadGaugeIndex(usize),
    #[error("subspace index {0} outside 0..=15")]
    BadSubspace(usize),
    #[error("operator {0} is not in the normalizer of the stabilizer group")]
    NotInNormalizer(String),
    #[error("projection onto the requested gauge configuration vanished")]
    ZeroProjection,
}

/// Error-subspace label `ℓ ∈ 0..16`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubspaceIndex(u8);

impl SubspaceIndex {
    pub const CODE: SubspaceIndex = SubspaceIndex(0);

    pub fn new(l: usize) -> Result<Self, AlgebraError> {
        if l < N_SUBSPACES {
            Ok(SubspaceIndex(l as u8))
        } else {
            Err(AlgebraError::BadSubspace(l))
        }
    }

    pub fn get(self) -> usize {
        self.0 as usize
    }

    pub fn all() -> impl Iterator<Item = SubspaceIndex> {
        (0..N_SUBSPACES as u8).map(SubspaceIndex)
    }

    /// Stabilizer signs `(S_x1, S_z1, S_x2, S_z2)` as `±1`.
    pub fn signs(self) -> [i8; 4] {
        let anti = anticommutation_bits(self);
        let mut out = [1i8; 4];
        for (i, o) in out.iter_mut().enumerate() {
            if anti & (8 >> i) != 0 {
                *o = -1;
            }
        }
        out
    }

    /// Inverse of [`SubspaceIndex::signs`].
    pub fn from_signs(signs: [i8; 4]) -> Self {
        let mut bits = 0u8;
        for (i, &s) in signs.iter().enumerate() {
            if s < 0 {
                bits |= 8 >> i;
            }
        }
        subspace_from_bits(bits)
    }

    /// Sign pattern string such as `+-+-`.
    pub fn pattern(self) -> String {
        self.signs()
            .iter()
            .map(|&s| if s > 0 { '+' } else { '-' })
            .collect()
    }
}

impl fmt::Display for SubspaceIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q{}", self.0)
    }
}

// Sign patterns are Gray-coded in pairs: (S_x1, S_z1) picks ℓ >> 2 and
// (S_x2, S_z2) picks ℓ & 3, each through 0 → ++, 1 → +-, 2 → --, 3 → -+.
fn anticommutation_bits(l: SubspaceIndex) -> u8 {
    let gray = |v: u8| v ^ (v >> 1);
    (gray(l.0 >> 2) << 2) | gray(l.0 & 3)
}

fn subspace_from_bits(bits: u8) -> SubspaceIndex {
    let ungray = |g: u8| g ^ (g >> 1);
    SubspaceIndex((ungray(bits >> 2) << 2) | ungray(bits & 3))
}

/// Logical Pauli acting on the encoded qubit; also used as a Pauli frame.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
pub enum Logical {
    #[default]
    I,
    X,
    Y,
    Z,
}

impl Logical {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Logical::I,
            (true, false) => Logical::X,
            (true, true) => Logical::Y,
            (false, true) => Logical::Z,
        }
    }

    pub fn x_bit(self) -> bool {
        matches!(self, Logical::X | Logical::Y)
    }

    pub fn z_bit(self) -> bool {
        matches!(self, Logical::Z | Logical::Y)
    }

    /// Product up to phase.
    pub fn compose(self, other: Logical) -> Logical {
        Logical::from_bits(self.x_bit() ^ other.x_bit(), self.z_bit() ^ other.z_bit())
    }

    pub fn is_identity(self) -> bool {
        self == Logical::I
    }

    /// Bare nine-qubit representative: `X_L = X1X4X7`, `Z_L = Z1Z2Z3`,
    /// `Y_L = i·X_L·Z_L`.
    pub fn operator(self) -> PauliOperator {
        let (x, z) = (logical_x(), logical_z());
        match self {
            Logical::I => PauliOperator::identity(N_QUBITS),
            Logical::X => x,
            Logical::Z => z,
            Logical::Y => (x * z).times_i(1),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Logical::I => "I",
            Logical::X => "X",
            Logical::Y => "Y",
            Logical::Z => "Z",
        }
    }
}

impl fmt::Display for Logical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Factorization of a single-qubit error: `e = i^phase · Q_ℓ · L · lift(gauge_op)`
/// on the code space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ErrorAction {
    pub q_index: SubspaceIndex,
    pub logical: Logical,
    /// Hermitian four-qubit Pauli on the gauge qubits.
    pub gauge_op: PauliOperator,
    pub phase_exp: u8,
}

/// Two single-qubit errors whose correction leaves a logical operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HarmfulPair {
    pub e1: PauliOperator,
    pub e2: PauliOperator,
    pub logical_type: Logical,
    pub subspace: SubspaceIndex,
}

const Z_GAUGE: [[usize; 2]; 6] = [[1, 4], [2, 5], [3, 6], [4, 7], [5, 8], [6, 9]];
const X_GAUGE: [[usize; 2]; 6] = [[1, 2], [4, 5], [7, 8], [2, 3], [5, 6], [8, 9]];

/// Gauge operator `G_k`, `k ∈ 1..=12`.
pub fn gauge_operator(k: usize) -> Result<PauliOperator, AlgebraError> {
    match k {
        1..=6 => Ok(PauliOperator::z_on(N_QUBITS, &Z_GAUGE[k - 1])),
        7..=12 => Ok(PauliOperator::x_on(N_QUBITS, &X_GAUGE[k - 7])),
        _ => Err(AlgebraError::BadGaugeIndex(k)),
    }
}

fn g(k: usize) -> PauliOperator {
    gauge_operator(k).expect("static gauge index")
}

/// Stabilizer generators in syndrome order `(S_x1, S_z1, S_x2, S_z2)`.
pub fn stabilizers() -> [PauliOperator; 4] {
    [
        g(7) * g(8) * g(9),
        g(1) * g(2) * g(3),
        g(10) * g(11) * g(12),
        g(4) * g(5) * g(6),
    ]
}

pub fn logical_x() -> PauliOperator {
    PauliOperator::x_on(N_QUBITS, &[1, 4, 7])
}

pub fn logical_z() -> PauliOperator {
    PauliOperator::z_on(N_QUBITS, &[1, 2, 3])
}

/// Gauge-qubit image `𝒢_k` of `G_k` (four-qubit Pauli).
pub fn gauge_rep(k: usize) -> Result<PauliOperator, AlgebraError> {
    let z = |q: &[usize]| PauliOperator::z_on(N_GAUGE_QUBITS, q);
    let x = |q: &[usize]| PauliOperator::x_on(N_GAUGE_QUBITS, q);
    Ok(match k {
        1 => z(&[1]),
        2 => z(&[1, 2]),
        3 => z(&[2]),
        4 => z(&[3]),
        5 => z(&[3, 4]),
        6 => z(&[4]),
        7 => x(&[1]),
        8 => x(&[1, 3]),
        9 => x(&[3]),
        10 => x(&[2]),
        11 => x(&[2, 4]),
        12 => x(&[4]),
        _ => return Err(AlgebraError::BadGaugeIndex(k)),
    })
}

// Gauge operators that realize single gauge-qubit X_j^g and Z_j^g.
const X_GAUGE_LIFT: [usize; 4] = [7, 10, 9, 12];
const Z_GAUGE_LIFT: [usize; 4] = [1, 3, 4, 6];

/// Nine-qubit operator that acts as the gauge-qubit Pauli `m` on the code
/// space.
pub fn lift_gauge(m: &PauliOperator) -> PauliOperator {
    assert_eq!(m.num_qubits(), N_GAUGE_QUBITS);
    let mut out = PauliOperator::identity(N_QUBITS).with_phase(m.phase_exp());
    for j in 1..=4usize {
        if m.x_mask() & PauliOperator::qubit_bit(N_GAUGE_QUBITS, j) != 0 {
            out = out * g(X_GAUGE_LIFT[j - 1]);
        }
    }
    for j in 1..=4usize {
        if m.z_mask() & PauliOperator::qubit_bit(N_GAUGE_QUBITS, j) != 0 {
            out = out * g(Z_GAUGE_LIFT[j - 1]);
        }
    }
    out
}

/// Representative `Q_ℓ`: a Pauli on qubit 1 times a Pauli on qubit 9,
/// `ℓ = 4·a + b` with `a, b` indexing `(I, X, Y, Z)` on qubits 1 and 9.
pub fn q_rep(l: SubspaceIndex) -> PauliOperator {
    let letter = |v: u8| match v {
        0 => None,
        1 => Some(PauliKind::X),
        2 => Some(PauliKind::Y),
        _ => Some(PauliKind::Z),
    };
    let mut out = PauliOperator::identity(N_QUBITS);
    if let Some(k) = letter(l.0 & 3) {
        out = out * PauliOperator::single(N_QUBITS, 9, k);
    }
    if let Some(k) = letter(l.0 >> 2) {
        out = out * PauliOperator::single(N_QUBITS, 1, k);
    }
    out
}

/// Canonical single-qubit correction for syndrome `ℓ` (first entry of the
/// correction column), identity for `ℓ = 0`.
pub fn correction_op(l: SubspaceIndex) -> PauliOperator {
    tables::CORRECTIONS[l.get()][0]
        .parse()
        .expect("static label")
}

/// All tabulated single-qubit corrections for `ℓ`.
pub fn correction_alternatives(l: SubspaceIndex) -> Vec<PauliOperator> {
    tables::CORRECTIONS[l.get()]
        .iter()
        .map(|s| s.parse().expect("static label"))
        .collect()
}

/// Error subspace reached from the code space by applying `p`.
pub fn syndrome_of(p: &PauliOperator) -> SubspaceIndex {
    let mut bits = 0u8;
    for (i, s) in stabilizers().iter().enumerate() {
        if !p.commutes(s) {
            bits |= 8 >> i;
        }
    }
    subspace_from_bits(bits)
}

/// `Q_ℓ1 · Q_ℓ2 = i^phase · Q_ℓ`.
pub fn q_mul(l1: SubspaceIndex, l2: SubspaceIndex) -> (SubspaceIndex, u8) {
    q_table()[l1.get()][l2.get()]
}

fn q_table() -> &'static [[(SubspaceIndex, u8); 16]; 16] {
    static TABLE: OnceLock<[[(SubspaceIndex, u8); 16]; 16]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [[(SubspaceIndex::CODE, 0u8); 16]; 16];
        for a in SubspaceIndex::all() {
            for b in SubspaceIndex::all() {
                let prod = q_rep(a) * q_rep(b);
                let l = syndrome_of(&prod);
                let base = q_rep(l);
                assert_eq!(
                    (prod.x_mask(), prod.z_mask()),
                    (base.x_mask(), base.z_mask()),
                    "Q product left the representative set"
                );
                let ph = (prod.phase_exp() + 4 - base.phase_exp()) & 3;
                t[a.get()][b.get()] = (l, ph);
            }
        }
        t
    })
}

/// `ζ_k(ℓ)`: `-1` iff `G_k` anticommutes with `Q_ℓ`.
pub fn zeta(k: usize, l: SubspaceIndex) -> Result<i8, AlgebraError> {
    let gk = gauge_operator(k)?;
    Ok(if gk.commutes(&q_rep(l)) { 1 } else { -1 })
}

/// All twelve signs `ζ_k(ℓ)` for `k = 1..=12`.
pub fn zeta_all(l: SubspaceIndex) -> [f64; 12] {
    let tab = zeta_table();
    tab[l.get()]
}

fn zeta_table() -> &'static [[f64; 12]; 16] {
    static TABLE: OnceLock<[[f64; 12]; 16]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [[1.0; 12]; 16];
        for l in SubspaceIndex::all() {
            for k in 1..=12 {
                t[l.get()][k - 1] = zeta(k, l).unwrap() as f64;
            }
        }
        t
    })
}

struct Solvers {
    gauge: SpanSolver,
    stab: SpanSolver,
}

fn solvers() -> &'static Solvers {
    static S: OnceLock<Solvers> = OnceLock::new();
    S.get_or_init(|| Solvers {
        gauge: SpanSolver::new(&(1..=12).map(|k| g(k).symplectic()).collect::<Vec<_>>()),
        stab: SpanSolver::new(
            &stabilizers()
                .iter()
                .map(|s| s.symplectic())
                .collect::<Vec<_>>(),
        ),
    })
}

/// Subset of `G_1..G_12` (bit `k-1`) whose product equals `p` up to phase.
pub fn gauge_subset(p: &PauliOperator) -> Option<u16> {
    solvers().gauge.solve(p.symplectic()).map(|m| m as u16)
}

/// Logical class of an operator in the stabilizer normalizer, read off from
/// commutation with the bare logical operators.
pub fn logical_class(p: &PauliOperator) -> Logical {
    Logical::from_bits(!p.commutes(&logical_z()), !p.commutes(&logical_x()))
}

/// Decompose an operator that commutes with every stabilizer into
/// `i^phase · L · lift(M) · S` with `S` a product of stabilizer generators.
fn decompose_normalizer(r: &PauliOperator) -> Result<(Logical, PauliOperator, u8), AlgebraError> {
    let logical = logical_class(r);
    let rest = logical.operator().inverse() * *r;
    let subset = gauge_subset(&rest).ok_or_else(|| AlgebraError::NotInNormalizer(r.to_string()))?;
    let mut m = PauliOperator::identity(N_GAUGE_QUBITS);
    for k in 1..=12 {
        if subset & (1 << (k - 1)) != 0 {
            m = m * gauge_rep(k).unwrap();
        }
    }
    let m = m.stripped();
    // leftover must be ± a stabilizer product; its sign fixes the phase
    let base = logical.operator() * lift_gauge(&m);
    let t = base.inverse() * *r;
    let stab_subset = solvers()
        .stab
        .solve(t.symplectic())
        .ok_or_else(|| AlgebraError::NotInNormalizer(r.to_string()))?;
    let stab = stabilizers()
        .iter()
        .enumerate()
        .filter(|(i, _)| stab_subset & (1 << i) != 0)
        .fold(PauliOperator::identity(N_QUBITS), |acc, (_, s)| acc * *s);
    let phase = (t.phase_exp() + 4 - stab.phase_exp()) & 3;
    Ok((logical, m, phase))
}

/// Factorization of a single-qubit Pauli error.
pub fn decompose_error(e: &PauliOperator) -> Result<ErrorAction, AlgebraError> {
    if e.num_qubits() != N_QUBITS || e.as_single().is_none() {
        return Err(AlgebraError::NotSingleQubit(e.to_string()));
    }
    decompose_any(e)
}

/// Factorization of an arbitrary nine-qubit Pauli.
pub fn decompose_any(e: &PauliOperator) -> Result<ErrorAction, AlgebraError> {
    let l = syndrome_of(e);
    let q = q_rep(l);
    let r = q.inverse() * *e;
    let (logical, gauge_op, phase) = decompose_normalizer(&r)?;
    Ok(ErrorAction {
        q_index: l,
        logical,
        gauge_op,
        phase_exp: phase,
    })
}

/// Cached factorization of the 27 single-qubit errors, indexed by
/// [`channel_index`].
pub fn single_error_actions() -> &'static [ErrorAction; 27] {
    static T: OnceLock<[ErrorAction; 27]> = OnceLock::new();
    T.get_or_init(|| {
        std::array::from_fn(|c| {
            let (q, k) = channel_from_index(c);
            decompose_error(&PauliOperator::single(N_QUBITS, q, k)).expect("single-qubit error")
        })
    })
}

/// Channel order: qubit-major, `X < Y < Z`.
pub fn channel_index(qubit: usize, kind: PauliKind) -> usize {
    (qubit - 1) * 3
        + match kind {
            PauliKind::X => 0,
            PauliKind::Y => 1,
            PauliKind::Z => 2,
        }
}

pub fn channel_from_index(c: usize) -> (usize, PauliKind) {
    (c / 3 + 1, PauliKind::ALL[c % 3])
}

/// Logical operation the decoder infers for a syndrome change by `delta`:
/// the logical factor of the tabulated single-qubit correction. The flag is
/// set when no single-qubit error produces `delta`, in which case the
/// logical factor of `Q_delta` itself is used.
pub fn inferred_logical(delta: SubspaceIndex) -> (Logical, bool) {
    static T: OnceLock<[(Logical, bool); 16]> = OnceLock::new();
    T.get_or_init(|| {
        std::array::from_fn(|l| {
            let l = SubspaceIndex(l as u8);
            let c = correction_op(l);
            if l.get() == 0 {
                (Logical::I, false)
            } else if c.weight() == 1 {
                (decompose_error(&c).unwrap().logical, false)
            } else {
                (decompose_any(&q_rep(l)).unwrap().logical, true)
            }
        })
    })[delta.get()]
}

/// All 27 single-qubit Paulis in channel order.
pub fn single_qubit_errors() -> Vec<PauliOperator> {
    (0..27)
        .map(|c| {
            let (q, k) = channel_from_index(c);
            PauliOperator::single(N_QUBITS, q, k)
        })
        .collect()
}

/// Exhaustive scan over unordered pairs of distinct single-qubit errors;
/// returns the pairs whose product, after the tabulated correction, leaves
/// a nontrivial logical operation. Pairs are ordered by channel index.
pub fn enumerate_harmful_pairs() -> Vec<HarmfulPair> {
    let errs = single_qubit_errors();
    let mut out = Vec::new();
    for i in 0..errs.len() {
        for j in (i + 1)..errs.len() {
            let prod = errs[i] * errs[j];
            let l = syndrome_of(&prod);
            let residue = prod * correction_op(l);
            let (logical, _, _) =
                decompose_normalizer(&residue).expect("corrected product lies in the normalizer");
            if !logical.is_identity() {
                out.push(HarmfulPair {
                    e1: errs[i],
                    e2: errs[j],
                    logical_type: logical,
                    subspace: l,
                });
            }
        }
    }
    out
}

/// Relabeling that maps the code onto itself with `X ↔ Z` exchanged:
/// transpose of the 3×3 grid.
pub fn transpose_qubit(q: usize) -> usize {
    match q {
        2 => 4,
        4 => 2,
        3 => 7,
        7 => 3,
        6 => 8,
        8 => 6,
        other => other,
    }
}

/// Apply the X↔Z exchange with grid transposition to a Pauli.
pub fn xz_mirror(p: &PauliOperator) -> PauliOperator {
    let mut out = PauliOperator::identity(p.num_qubits());
    for q in 1..=p.num_qubits() as usize {
        if let Some(k) = p.kind_at(q) {
            let k2 = match k {
                PauliKind::X => PauliKind::Z,
                PauliKind::Z => PauliKind::X,
                PauliKind::Y => PauliKind::Y,
            };
            out = out * PauliOperator::single(p.num_qubits(), transpose_qubit(q), k2);
        }
    }
    out
}

/// Sanity check of every derived table against its stored golden copy.
/// Returns a list of human-readable mismatches (empty on success).
pub fn self_check() -> Vec<String> {
    let mut bad = Vec::new();
    let golden = tables::q_product_table();
    for a in SubspaceIndex::all() {
        for b in SubspaceIndex::all() {
            let got = q_mul(a, b);
            let want = golden[a.get()][b.get()];
            if got != want {
                bad.push(format!(
                    "Q{}×Q{}: computed {:?}, stored {:?}",
                    a.get(),
                    b.get(),
                    got,
                    want
                ));
            }
        }
    }
    for (ell, pat) in tables::SYNDROME_PATTERNS.iter().enumerate() {
        let l = SubspaceIndex(ell as u8);
        if l.pattern() != *pat {
            bad.push(format!("pattern of Q{ell}: {} vs {}", l.pattern(), pat));
        }
        if syndrome_of(&q_rep(l)) != l {
            bad.push(format!("Q{ell} representative has the wrong syndrome"));
        }
        for c in correction_alternatives(l) {
            if syndrome_of(&c) != l {
                bad.push(format!("correction {c} does not produce Q{ell}"));
            }
        }
    }
    for row in tables::ERROR_ACTIONS {
        let e: PauliOperator = row.error.parse().unwrap();
        match decompose_error(&e) {
            Ok(a) => {
                let want_gauge = PauliOperator::parse(N_GAUGE_QUBITS, row.gauge)
                    .unwrap()
                    .stripped();
                if a.q_index.get() != row.q || a.logical != row.logical || a.gauge_op != want_gauge
                {
                    bad.push(format!(
                        "{}: computed ({}, {}, {}), stored (Q{}, {}, {})",
                        row.error, a.q_index, a.logical, a.gauge_op, row.q, row.logical, row.gauge
                    ));
                }
            }
            Err(err) => bad.push(format!("{}: {err}", row.error)),
        }
    }
    let mut want = stored_harmful_pairs();
    let mut got: Vec<(String, Logical, usize)> = enumerate_harmful_pairs()
        .iter()
        .map(|h| (pair_key(&h.e1, &h.e2), h.logical_type, h.subspace.get()))
        .collect();
    want.sort();
    got.sort();
    if want != got {
        bad.push(format!(
            "harmful pairs: enumerated {} entries, stored {}",
            got.len(),
            want.len()
        ));
        for w in want.iter().filter(|w| !got.contains(w)) {
            bad.push(format!("missing harmful pair {w:?}"));
        }
        for g in got.iter().filter(|g| !want.contains(g)) {
            bad.push(format!("unexpected harmful pair {g:?}"));
        }
    }
    bad
}

fn pair_key(a: &PauliOperator, b: &PauliOperator) -> String {
    let (mut x, mut y) = (a.to_string(), b.to_string());
    if (a.as_single().map(|s| s.0), x.clone()) > (b.as_single().map(|s| s.0), y.clone()) {
        std::mem::swap(&mut x, &mut y);
    }
    format!("{x}{y}")
}

/// Stored harmful-pair lists, with the logical-Z list generated from the
/// logical-X list by [`xz_mirror`].
fn stored_harmful_pairs() -> Vec<(String, Logical, usize)> {
    let split = |s: &str| -> (PauliOperator, PauliOperator) {
        let cut = s[1..].find(|c: char| c.is_ascii_alphabetic()).unwrap() + 1;
        (s[..cut].parse().unwrap(), s[cut..].parse().unwrap())
    };
    let mut out = Vec::new();
    for (line, (l, pairs)) in tables::HARMFUL_X.iter().enumerate() {
        for s in pairs.iter() {
            let (a, b) = split(s);
            out.push((pair_key(&a, &b), Logical::X, *l));
            let (ma, mb) = (xz_mirror(&a), xz_mirror(&b));
            out.push((
                pair_key(&ma, &mb),
                Logical::Z,
                tables::HARMFUL_Z_SUBSPACES[line],
            ));
        }
    }
    for (l, pairs) in tables::HARMFUL_Y.iter() {
        for s in pairs.iter() {
            let (a, b) = split(s);
            out.push((pair_key(&a, &b), Logical::Y, *l));
        }
    }
    out
}
