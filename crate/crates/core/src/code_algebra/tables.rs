//! Stored reference copies of the code tables.
//!
//! The algebra module derives every table from Pauli products; these
//! constants are independent transcriptions used by [`super::self_check`]
//! and the test suites to catch drift in either direction.

use super::{Logical, SubspaceIndex};

/// Stabilizer sign pattern `(S_x1, S_z1, S_x2, S_z2)` for each `ℓ`.
pub const SYNDROME_PATTERNS: [&str; 16] = [
    "++++", "+++-", "++--", "++-+", "+-++", "+-+-", "+---", "+--+", "--++", "--+-", "----", "---+",
    "-+++", "-++-", "-+--", "-+-+",
];

/// Representatives `Q_ℓ` as written in the subspace table.
pub const Q_LABELS: [&str; 16] = [
    "I", "X9", "Y9", "Z9", "X1", "X9X1", "Y9X1", "Z9X1", "Y1", "X9Y1", "Y9Y1", "Z9Y1", "Z1",
    "X9Z1", "Y9Z1", "Z9Z1",
];

/// Single-qubit corrections per syndrome; alternatives in each row are
/// gauge-equivalent.
pub const CORRECTIONS: [&[&str]; 16] = [
    &["I"],
    &["X7", "X8", "X9"],
    &["Y9"],
    &["Z3", "Z6", "Z9"],
    &["X1", "X2", "X3"],
    &["X4", "X5", "X6"],
    &["Y6"],
    &["Y3"],
    &["Y1"],
    &["Y4"],
    &["Y5"],
    &["Y2"],
    &["Z1", "Z4", "Z7"],
    &["Y7"],
    &["Y8"],
    &["Z2", "Z5", "Z8"],
];

/// One row of the single-error equivalence table.
#[derive(Debug, Clone, Copy)]
pub struct ErrorActionRow {
    pub error: &'static str,
    pub q: usize,
    pub logical: Logical,
    /// Gauge-qubit Pauli, four-qubit label.
    pub gauge: &'static str,
    /// Overall sign on the code space (`+1` or `-1`).
    pub sign: i8,
}

const fn row(
    error: &'static str,
    q: usize,
    logical: Logical,
    gauge: &'static str,
    sign: i8,
) -> ErrorActionRow {
    ErrorActionRow {
        error,
        q,
        logical,
        gauge,
        sign,
    }
}

pub const ERROR_ACTIONS: [ErrorActionRow; 27] = [
    row("X1", 4, Logical::I, "I", 1),
    row("X2", 4, Logical::I, "X1", 1),
    row("X3", 4, Logical::I, "X1X2", 1),
    row("X4", 5, Logical::X, "X3X4", 1),
    row("X5", 5, Logical::X, "X1X4", 1),
    row("X6", 5, Logical::X, "X1X2", 1),
    row("X7", 1, Logical::I, "X3X4", 1),
    row("X8", 1, Logical::I, "X4", 1),
    row("X9", 1, Logical::I, "I", 1),
    row("Z1", 12, Logical::I, "I", 1),
    row("Z2", 15, Logical::Z, "Z2Z4", 1),
    row("Z3", 3, Logical::I, "Z2Z4", 1),
    row("Z4", 12, Logical::I, "Z1", 1),
    row("Z5", 15, Logical::Z, "Z1Z4", 1),
    row("Z6", 3, Logical::I, "Z4", 1),
    row("Z7", 12, Logical::I, "Z1Z3", 1),
    row("Z8", 15, Logical::Z, "Z1Z3", 1),
    row("Z9", 3, Logical::I, "I", 1),
    row("Y1", 8, Logical::I, "I", 1),
    row("Y2", 11, Logical::Z, "X1Z2Z4", -1),
    row("Y3", 7, Logical::I, "X1Y2Z4", 1),
    row("Y4", 9, Logical::X, "Z1X3X4", -1),
    row("Y5", 10, Logical::Y, "Y1Y4", 1),
    row("Y6", 6, Logical::X, "X1X2Z4", -1),
    row("Y7", 13, Logical::I, "Z1Y3X4", 1),
    row("Y8", 14, Logical::Z, "Z1Z3X4", -1),
    row("Y9", 2, Logical::I, "I", 1),
];

/// Products `Q_row × Q_col` with their phases.
pub const Q_PRODUCTS: [[&str; 16]; 16] = [
    [
        "I", "Q1", "Q2", "Q3", "Q4", "Q5", "Q6", "Q7", "Q8", "Q9", "Q10", "Q11", "Q12", "Q13",
        "Q14", "Q15",
    ],
    [
        "Q1", "I", "iQ3", "-iQ2", "Q5", "Q4", "iQ7", "-iQ6", "Q9", "Q8", "iQ11", "-iQ10", "Q13",
        "Q12", "iQ15", "-iQ14",
    ],
    [
        "Q2", "-iQ3", "I", "iQ1", "Q6", "-iQ7", "Q4", "iQ5", "Q10", "-iQ11", "Q8", "iQ9", "Q14",
        "-iQ15", "Q12", "iQ13",
    ],
    [
        "Q3", "iQ2", "-iQ1", "I", "Q7", "iQ6", "-iQ5", "Q4", "Q11", "iQ10", "-iQ9", "Q8", "Q15",
        "iQ14", "-iQ13", "Q12",
    ],
    [
        "Q4", "Q5", "Q6", "Q7", "I", "Q1", "Q2", "Q3", "iQ12", "iQ13", "iQ14", "iQ15", "-iQ8",
        "-iQ9", "-iQ10", "-iQ11",
    ],
    [
        "Q5", "Q4", "iQ7", "-iQ6", "Q1", "I", "iQ3", "-iQ2", "iQ13", "iQ12", "-Q15", "Q14", "-iQ9",
        "-iQ8", "Q11", "-Q10",
    ],
    [
        "Q6", "-iQ7", "Q4", "iQ5", "Q2", "-iQ3", "I", "iQ1", "iQ14", "Q15", "iQ12", "-Q13",
        "-iQ10", "-Q11", "-iQ8", "Q9",
    ],
    [
        "Q7", "iQ6", "-iQ5", "Q4", "Q3", "iQ2", "-iQ1", "I", "iQ15", "-Q14", "Q13", "iQ12",
        "-iQ11", "Q10", "-Q9", "-iQ8",
    ],
    [
        "Q8", "Q9", "Q10", "Q11", "-iQ12", "-iQ13", "-iQ14", "-iQ15", "I", "Q1", "Q2", "Q3", "iQ4",
        "iQ5", "iQ6", "iQ7",
    ],
    [
        "Q9", "Q8", "iQ11", "-iQ10", "-iQ13", "-iQ12", "Q15", "-Q14", "Q1", "I", "iQ3", "-iQ2",
        "iQ5", "iQ4", "-Q7", "Q6",
    ],
    [
        "Q10", "-iQ11", "Q8", "iQ9", "-iQ14", "-Q15", "-iQ12", "Q13", "Q2", "-iQ3", "I", "iQ1",
        "iQ6", "Q7", "iQ4", "-Q5",
    ],
    [
        "Q11", "iQ10", "-iQ9", "Q8", "-iQ15", "Q14", "-Q13", "-iQ12", "Q3", "iQ2", "-iQ1", "I",
        "iQ7", "-Q6", "Q5", "iQ4",
    ],
    [
        "Q12", "Q13", "Q14", "Q15", "iQ8", "iQ9", "iQ10", "iQ11", "-iQ4", "-iQ5", "-iQ6", "-iQ7",
        "I", "Q1", "Q2", "Q3",
    ],
    [
        "Q13", "Q12", "iQ15", "-iQ14", "iQ9", "iQ8", "-Q11", "Q10", "-iQ5", "-iQ4", "Q7", "-Q6",
        "Q1", "I", "iQ3", "-iQ2",
    ],
    [
        "Q14", "-iQ15", "Q12", "iQ13", "iQ10", "Q11", "iQ8", "-Q9", "-iQ6", "-Q7", "-iQ4", "Q5",
        "Q2", "-iQ3", "I", "iQ1",
    ],
    [
        "Q15", "iQ14", "-iQ13", "Q12", "iQ11", "-Q10", "Q9", "iQ8", "-iQ7", "Q6", "-Q5", "-iQ4",
        "Q3", "iQ2", "-iQ1", "I",
    ],
];

/// Parse one entry of [`Q_PRODUCTS`] into `(ℓ, phase_exp)`.
pub fn parse_q_entry(s: &str) -> (SubspaceIndex, u8) {
    let (phase, rest) = if let Some(r) = s.strip_prefix("-i") {
        (3, r)
    } else if let Some(r) = s.strip_prefix('i') {
        (1, r)
    } else if let Some(r) = s.strip_prefix('-') {
        (2, r)
    } else {
        (0, s)
    };
    let l = if rest == "I" {
        0
    } else {
        rest.trim_start_matches('Q').parse().expect("Q label")
    };
    (SubspaceIndex::new(l).expect("Q index"), phase)
}

/// [`Q_PRODUCTS`] parsed.
pub fn q_product_table() -> [[(SubspaceIndex, u8); 16]; 16] {
    std::array::from_fn(|a| std::array::from_fn(|b| parse_q_entry(Q_PRODUCTS[a][b])))
}

/// Harmful pairs leading to a logical X, grouped by the subspace reached.
pub const HARMFUL_X: [(usize, &[&str]); 12] = [
    (
        1,
        &[
            "X1X4", "X1X5", "X1X6", "X2X4", "X2X5", "X2X6", "X3X4", "X3X5", "X3X6", "Y3Y6", "Y1Y4",
            "Y2Y5",
        ],
    ),
    (2, &["X1Y6", "X2Y6", "X3Y6", "X4Y3", "X5Y3", "X6Y3"]),
    (
        4,
        &[
            "X7X4", "X7X5", "X7X6", "X8X4", "X8X5", "X8X6", "X9X4", "X9X5", "X9X6", "Y6Y9", "Y4Y7",
            "Y5Y8",
        ],
    ),
    (
        5,
        &[
            "X1X7", "X1X8", "X1X9", "X2X7", "X2X8", "X2X9", "X3X7", "X3X8", "X3X9", "Y3Y9", "Y1Y7",
            "Y2Y8",
        ],
    ),
    (6, &["X7Y3", "X8Y3", "X9Y3", "X1Y9", "X2Y9", "X3Y9"]),
    (7, &["X7Y6", "X8Y6", "X9Y6", "X4Y9", "X5Y9", "X6Y9"]),
    (8, &["X7Y4", "X8Y4", "X9Y4", "X4Y7", "X5Y7", "X6Y7"]),
    (9, &["X7Y1", "X8Y1", "X9Y1", "X1Y7", "X2Y7", "X3Y7"]),
    (10, &["X7Y2", "X8Y2", "X9Y2", "X1Y8", "X2Y8", "X3Y8"]),
    (11, &["X7Y5", "X8Y5", "X9Y5", "X4Y8", "X5Y8", "X6Y8"]),
    (13, &["X1Y4", "X2Y4", "X3Y4", "X4Y1", "X5Y1", "X6Y1"]),
    (14, &["X1Y5", "X2Y5", "X3Y5", "X4Y2", "X5Y2", "X6Y2"]),
];

/// Subspaces reached by the mirrored (logical-Z) lines of [`HARMFUL_X`].
pub const HARMFUL_Z_SUBSPACES: [usize; 12] = [3, 2, 12, 15, 14, 13, 8, 11, 10, 9, 7, 6];

/// Harmful pairs leading to a logical Y.
pub const HARMFUL_Y: [(usize, &[&str]); 9] = [
    (2, &["Y1Y5", "Y2Y4"]),
    (6, &["Y1Y8", "Y2Y7"]),
    (7, &["Y4Y8", "Y5Y7"]),
    (8, &["Y5Y9", "Y6Y8"]),
    (9, &["Y2Y9", "Y3Y8"]),
    (10, &["Y1Y9", "Y3Y7"]),
    (11, &["Y4Y9", "Y6Y7"]),
    (13, &["Y2Y6", "Y3Y5"]),
    (14, &["Y1Y6", "Y3Y4"]),
];

/// The first sixteen code-space basis vectors: four computational kets
/// (qubits 1..9 left to right) with amplitude `+1/2` each.
pub const BASIS_KETS: [[&str; 4]; 16] = [
    ["000000000", "110110110", "101101101", "011011011"],
    ["000000011", "110110101", "101101110", "011011000"],
    ["000000110", "110110000", "101101011", "011011101"],
    ["000000101", "110110011", "101101000", "011011110"],
    ["000011011", "110101101", "101110110", "011000000"],
    ["000011000", "110101110", "101110101", "011000011"],
    ["000011101", "110101011", "101110000", "011000110"],
    ["000011110", "110101000", "101110011", "011000101"],
    ["000110110", "110000000", "101011011", "011101101"],
    ["000110101", "110000011", "101011000", "011101110"],
    ["000110000", "110000110", "101011101", "011101011"],
    ["000110011", "110000101", "101011110", "011101000"],
    ["000101101", "110011011", "101000000", "011110110"],
    ["000101110", "110011000", "101000011", "011110101"],
    ["000101011", "110011101", "101000110", "011110000"],
    ["000101000", "110011110", "101000101", "011110011"],
];

/// Sign pattern of the X-collapse change of basis, rows over the X-gauge
/// outcomes and columns over the Z-gauge outcomes; each entry is `±1/4`.
pub const U_SIGNS: [&str; 16] = [
    "++++++++++++++++",
    "+-+-+-+-+-+-+-+-",
    "++++----++++----",
    "+-+--+-++-+--+-+",
    "++--++--++--++--",
    "+--++--++--++--+",
    "++----++++----++",
    "+--+-++-+--+-++-",
    "++++++++--------",
    "+-+-+-+--+-+-+-+",
    "++++--------++++",
    "+-+--+-+-+-++-+-",
    "++--++----++--++",
    "+--++--+-++--++-",
    "++----++--++++--",
    "+--+-++--++-+--+",
];

/// [`U_SIGNS`] as a dense matrix.
pub fn u_matrix_reference() -> [[f64; 16]; 16] {
    std::array::from_fn(|r| {
        let row: Vec<char> = U_SIGNS[r].chars().collect();
        std::array::from_fn(|c| if row[c] == '+' { 0.25 } else { -0.25 })
    })
}
