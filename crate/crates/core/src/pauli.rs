//! Phase-exact Pauli strings on up to 16 qubits.
//!
//! An operator is stored as `i^phase · X^x · Z^z`, with the X part to the
//! left of the Z part on every qubit. Under this convention `Y = i·X·Z`, so a
//! Hermitian operator has `phase ≡ popcount(x & z) (mod 2)`.
//!
//! Qubits are numbered from 1 and stored big-endian: qubit `j` of an
//! `n`-qubit register is bit `n - j` of a mask. A computational basis ket
//! written left to right (`|q1 q2 … qn⟩`) therefore reads as the binary
//! literal of its index.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use thiserror::Error;

/// Largest register supported by the 16-bit masks.
pub const MAX_QUBITS: u8 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PauliParseError {
    #[error("empty Pauli label")]
    Empty,
    #[error("unexpected character {0:?} in Pauli label")]
    BadChar(char),
    #[error("qubit index {index} outside 1..={n}")]
    QubitOutOfRange { index: usize, n: u8 },
    #[error("qubit {0} appears twice")]
    Repeated(usize),
}

/// Single-qubit Pauli letter.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize,
)]
pub enum PauliKind {
    X,
    Y,
    Z,
}

impl PauliKind {
    pub const ALL: [PauliKind; 3] = [PauliKind::X, PauliKind::Y, PauliKind::Z];

    pub fn letter(self) -> char {
        match self {
            PauliKind::X => 'X',
            PauliKind::Y => 'Y',
            PauliKind::Z => 'Z',
        }
    }
}

/// Pauli operator with an exact quarter-turn phase.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    n: u8,
    x: u16,
    z: u16,
    phase: u8,
}

impl PauliOperator {
    pub fn identity(n: u8) -> Self {
        assert!(n >= 1 && n <= MAX_QUBITS, "register size {n} unsupported");
        PauliOperator {
            n,
            x: 0,
            z: 0,
            phase: 0,
        }
    }

    /// Raw constructor: `i^phase · X^x · Z^z`.
    pub fn from_parts(n: u8, x: u16, z: u16, phase: u8) -> Self {
        let p = Self::identity(n);
        let m = p.full_mask();
        assert!(x & !m == 0 && z & !m == 0, "mask exceeds register");
        PauliOperator {
            n,
            x,
            z,
            phase: phase & 3,
        }
    }

    /// Hermitian operator with the given supports (`Y` wherever both overlap).
    pub fn hermitian(n: u8, x: u16, z: u16) -> Self {
        let ph = ((x & z).count_ones() & 3) as u8;
        Self::from_parts(n, x, z, ph)
    }

    pub fn single(n: u8, qubit: usize, kind: PauliKind) -> Self {
        assert!(
            qubit >= 1 && qubit <= n as usize,
            "qubit {qubit} outside 1..={n}"
        );
        let b = 1u16 << (n as usize - qubit);
        match kind {
            PauliKind::X => Self::hermitian(n, b, 0),
            PauliKind::Y => Self::hermitian(n, b, b),
            PauliKind::Z => Self::hermitian(n, 0, b),
        }
    }

    pub fn x_on(n: u8, qubits: &[usize]) -> Self {
        qubits.iter().fold(Self::identity(n), |acc, &q| {
            acc * Self::single(n, q, PauliKind::X)
        })
    }

    pub fn z_on(n: u8, qubits: &[usize]) -> Self {
        qubits.iter().fold(Self::identity(n), |acc, &q| {
            acc * Self::single(n, q, PauliKind::Z)
        })
    }

    pub fn num_qubits(&self) -> u8 {
        self.n
    }
    pub fn x_mask(&self) -> u16 {
        self.x
    }
    pub fn z_mask(&self) -> u16 {
        self.z
    }
    pub fn phase_exp(&self) -> u8 {
        self.phase
    }

    fn full_mask(&self) -> u16 {
        if self.n == 16 {
            u16::MAX
        } else {
            (1u16 << self.n) - 1
        }
    }

    /// Bit of qubit `j` (1-based) in a mask.
    pub fn qubit_bit(n: u8, qubit: usize) -> u16 {
        1u16 << (n as usize - qubit)
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn support(&self) -> u16 {
        self.x | self.z
    }

    pub fn weight(&self) -> u32 {
        self.support().count_ones()
    }

    /// Letter acting on `qubit`, or `None` for identity there.
    pub fn kind_at(&self, qubit: usize) -> Option<PauliKind> {
        let b = Self::qubit_bit(self.n, qubit);
        match (self.x & b != 0, self.z & b != 0) {
            (false, false) => None,
            (true, false) => Some(PauliKind::X),
            (true, true) => Some(PauliKind::Y),
            (false, true) => Some(PauliKind::Z),
        }
    }

    /// `(qubit, kind)` when the operator acts on exactly one qubit.
    pub fn as_single(&self) -> Option<(usize, PauliKind)> {
        if self.weight() != 1 {
            return None;
        }
        let bit = self.support().trailing_zeros() as usize;
        let q = self.n as usize - bit;
        self.kind_at(q).map(|k| (q, k))
    }

    /// Phase exponent relative to the Hermitian form with the same supports.
    pub fn sign_exp(&self) -> u8 {
        (self.phase + 4 - ((self.x & self.z).count_ones() & 3) as u8) & 3
    }

    pub fn is_hermitian(&self) -> bool {
        self.sign_exp() & 1 == 0
    }

    /// Same supports, phase cleared to the Hermitian form.
    pub fn stripped(&self) -> Self {
        Self::hermitian(self.n, self.x, self.z)
    }

    pub fn with_phase(&self, phase: u8) -> Self {
        PauliOperator {
            phase: phase & 3,
            ..*self
        }
    }

    /// Multiply by `i^k`.
    pub fn times_i(&self, k: u8) -> Self {
        self.with_phase(self.phase + (k & 3))
    }

    pub fn commutes(&self, other: &Self) -> bool {
        assert_eq!(self.n, other.n, "register size mismatch");
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()) % 2 == 0
    }

    pub fn inverse(&self) -> Self {
        // (i^p X^x Z^z)^-1 = i^-p Z^z X^x = i^-p (-1)^{|x&z|} X^x Z^z
        let flip = 2 * ((self.x & self.z).count_ones() & 1) as u8;
        self.with_phase((4 - self.phase) + flip)
    }

    /// Action on a computational basis state: returns `(index', phase_exp)`
    /// with `P|b⟩ = i^phase_exp |index'⟩`.
    pub fn apply_to_basis(&self, b: usize) -> (usize, u8) {
        let b16 = b as u16;
        let sign = 2 * ((self.z & b16).count_ones() & 1) as u8;
        ((b16 ^ self.x) as usize, (self.phase + sign) & 3)
    }

    /// Binary symplectic vector `(x << n) | z`.
    pub fn symplectic(&self) -> u32 {
        ((self.x as u32) << self.n) | self.z as u32
    }

    /// Tensor-embed into a larger register so that qubit `j` of `self`
    /// lands on `qubits[j-1]`.
    pub fn embed(&self, n: u8, qubits: &[usize]) -> Self {
        assert_eq!(qubits.len(), self.n as usize);
        let mut x = 0u16;
        let mut z = 0u16;
        for (j, &q) in qubits.iter().enumerate() {
            let src = Self::qubit_bit(self.n, j + 1);
            let dst = Self::qubit_bit(n, q);
            if self.x & src != 0 {
                x |= dst;
            }
            if self.z & src != 0 {
                z |= dst;
            }
        }
        Self::from_parts(n, x, z, self.phase)
    }

    /// Parse labels such as `X5`, `Y1Y4`, `-iX1Z9`, `I`.
    pub fn parse(n: u8, s: &str) -> Result<Self, PauliParseError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(PauliParseError::Empty);
        }
        let (mut extra, mut rest) = (0u8, s);
        if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        } else if let Some(r) = rest.strip_prefix('-') {
            extra = 2;
            rest = r;
        }
        if let Some(r) = rest.strip_prefix('i') {
            extra += 1;
            rest = r;
        }
        let mut p = Self::identity(n);
        if rest == "I" {
            return Ok(p.times_i(extra));
        }
        let chars: Vec<char> = rest.chars().collect();
        let mut seen = 0u16;
        let mut i = 0;
        while i < chars.len() {
            let kind = match chars[i] {
                'X' => PauliKind::X,
                'Y' => PauliKind::Y,
                'Z' => PauliKind::Z,
                c => return Err(PauliParseError::BadChar(c)),
            };
            i += 1;
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(PauliParseError::BadChar(
                    chars.get(i).copied().unwrap_or(' '),
                ));
            }
            let idx: usize = chars[start..i].iter().collect::<String>().parse().unwrap();
            if idx == 0 || idx > n as usize {
                return Err(PauliParseError::QubitOutOfRange { index: idx, n });
            }
            let b = Self::qubit_bit(n, idx);
            if seen & b != 0 {
                return Err(PauliParseError::Repeated(idx));
            }
            seen |= b;
            p = p * Self::single(n, idx, kind);
        }
        Ok(p.times_i(extra))
    }
}

impl Mul for PauliOperator {
    type Output = PauliOperator;

    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.n, rhs.n, "register size mismatch");
        // X^a Z^b X^c Z^d = (-1)^{b·c} X^{a+c} Z^{b+d}
        let swap = 2 * ((self.z & rhs.x).count_ones() & 1) as u8;
        PauliOperator {
            n: self.n,
            x: self.x ^ rhs.x,
            z: self.z ^ rhs.z,
            phase: (self.phase + rhs.phase + swap) & 3,
        }
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = ["", "i", "-", "-i"][self.sign_exp() as usize];
        f.write_str(prefix)?;
        if self.is_identity_up_to_phase() {
            return f.write_str("I");
        }
        for q in 1..=self.n as usize {
            if let Some(k) = self.kind_at(q) {
                write!(f, "{}{}", k.letter(), q)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli[{}]({})", self.n, self)
    }
}

/// Nine-qubit label parser used throughout the code tables.
impl FromStr for PauliOperator {
    type Err = PauliParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(9, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn involution_and_xz_product() {
        assert_eq!(p("X1") * p("X1"), PauliOperator::identity(9));
        // X·Z = -i·Y under Y = iXZ
        assert_eq!(p("X9") * p("Z9"), p("-iY9"));
        assert_eq!(p("Z9") * p("X9"), p("iY9"));
    }

    #[test]
    fn commutation_examples() {
        let g = p("X4X5");
        assert!(p("X5").commutes(&g));
        assert!(!p("Z5").commutes(&g));
    }

    #[test]
    fn display_round_trip() {
        for s in ["I", "X1", "-Y3", "iZ9", "-iX1Y4Z7", "Y1Y2Y3Y4Y5Y6Y7Y8Y9"] {
            assert_eq!(p(s).to_string(), s);
        }
    }

    #[test]
    fn basis_action() {
        // qubit 1 is the most significant bit
        let (b, ph) = p("X1").apply_to_basis(0);
        assert_eq!((b, ph), (0b100_000_000, 0));
        let (b, ph) = p("Z9").apply_to_basis(1);
        assert_eq!((b, ph), (1, 2));
        let (b, ph) = p("Y1").apply_to_basis(0);
        assert_eq!((b, ph), (0b100_000_000, 1));
    }

    #[test]
    fn parse_errors() {
        assert!(PauliOperator::parse(9, "X10").is_err());
        assert!(PauliOperator::parse(9, "X1X1").is_err());
        assert!(PauliOperator::parse(9, "Q1").is_err());
        assert!(PauliOperator::parse(9, "").is_err());
    }
}
