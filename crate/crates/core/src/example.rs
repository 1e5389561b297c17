//! Reference instance: `q = 5`, `r = 2`, `alpha = 2`, and the six-point code
//! `U = {(0,0), (1,0), (2,0), (0,1), (1,1), (2,1)}` of length 16.
//!
//! The tabulated matrix lists rows and columns in the order
//! [`REFERENCE_ORDER`], which coincides with the canonical order of
//! [`OrderedH`](crate::OrderedH). Row numbers below are 1-based positions in
//! that order.

use std::sync::Arc;

use serde::Serialize;

use crate::codes::{CodeSpec, Torus};
use crate::distance::{self, Budget};
use crate::linalg::Matrix;

pub const Q: u32 = 5;
pub const R: usize = 2;

pub const REFERENCE_ORDER: [[u32; 2]; 16] = [
    [0, 0], [0, 2], [2, 0], [2, 2],
    [0, 1], [0, 3], [1, 0], [3, 0],
    [1, 1], [3, 3], [1, 2], [3, 2],
    [1, 3], [3, 1], [2, 1], [2, 3],
];

#[rustfmt::skip]
pub const REFERENCE_MATRIX: [[u32; 16]; 16] = [
    [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, 4, 4, 1, 1, 4, 4, 1, 1, 4, 4, 4, 4],
    [1, 1, 1, 1, 1, 1, 4, 4, 4, 4, 4, 4, 4, 4, 1, 1],
    [1, 1, 1, 1, 4, 4, 4, 4, 1, 1, 4, 4, 1, 1, 4, 4],
    [1, 4, 1, 4, 2, 3, 1, 1, 2, 3, 4, 4, 3, 2, 2, 3],
    [1, 4, 1, 4, 3, 2, 1, 1, 3, 2, 4, 4, 2, 3, 3, 2],
    [1, 1, 4, 4, 1, 1, 2, 3, 2, 3, 2, 3, 2, 3, 4, 4],
    [1, 1, 4, 4, 1, 1, 3, 2, 3, 2, 3, 2, 3, 2, 4, 4],
    [1, 4, 4, 1, 2, 3, 2, 3, 4, 4, 3, 2, 1, 1, 3, 2],
    [1, 4, 4, 1, 3, 2, 3, 2, 4, 4, 2, 3, 1, 1, 2, 3],
    [1, 1, 4, 4, 4, 4, 2, 3, 3, 2, 2, 3, 3, 2, 1, 1],
    [1, 1, 4, 4, 4, 4, 3, 2, 2, 3, 3, 2, 2, 3, 1, 1],
    [1, 4, 4, 1, 3, 2, 2, 3, 1, 1, 3, 2, 4, 4, 2, 3],
    [1, 4, 4, 1, 2, 3, 3, 2, 1, 1, 2, 3, 4, 4, 3, 2],
    [1, 4, 1, 4, 2, 3, 4, 4, 3, 2, 1, 1, 2, 3, 2, 3],
    [1, 4, 1, 4, 3, 2, 4, 4, 2, 3, 1, 1, 3, 2, 3, 2],
];

/// `M * M^t`: identity on the four fixed points, then 2x2 swaps.
pub fn reference_gram() -> [[u32; 16]; 16] {
    let mut g = [[0u32; 16]; 16];
    for (j, row) in g.iter_mut().enumerate() {
        let partner = if j < 4 { j } else if j % 2 == 0 { j + 1 } else { j - 1 };
        row[partner] = 1;
    }
    g
}

pub const CODE_U: &str = "0,0;1,0;2,0;0,1;1,1;2,1";

/// 1-based rows of the reference matrix forming a generator matrix.
pub const GENERATOR_ROWS: [usize; 6] = [1, 3, 5, 7, 9, 15];

/// 1-based rows forming a control matrix.
pub const CONTROL_ROWS: [usize; 10] = [2, 4, 5, 7, 9, 11, 12, 13, 14, 15];

/// Minimum distance of the six-point code, found by exhaustive enumeration
/// of all 5^6 - 1 nonzero codewords.
pub const MIN_DISTANCE: usize = 6;

#[derive(Debug, Clone, Serialize)]
pub struct ExampleCheck {
    pub name: &'static str,
    pub passed: bool,
}

pub fn torus() -> Arc<Torus> {
    Torus::build(Q, R).expect("F_5 with r = 2 is valid")
}

pub fn code() -> CodeSpec {
    CodeSpec::parse(torus(), CODE_U).expect("reference U is valid")
}

fn rows_of(indices: &[usize]) -> Matrix {
    let rows: Vec<Vec<u32>> = indices.iter().map(|&i| REFERENCE_MATRIX[i - 1].to_vec()).collect();
    Matrix::from_indices(&rows)
}

/// Recomputes the reference instance and compares it with the tabulated
/// values.
pub fn self_check() -> Vec<ExampleCheck> {
    let t = torus();
    let spec = code();
    let m = t.evaluation_matrix().expect("n = 16 fits");
    let order = t.order();
    let mut checks = Vec::new();
    let mut push = |name, passed| checks.push(ExampleCheck { name, passed });

    push("alpha = 2", t.field().alpha().index() == 2);
    let order_ok = REFERENCE_ORDER
        .iter()
        .enumerate()
        .all(|(j, u)| order.get(j).coords() == u);
    push("canonical order matches the reference order", order_ok);
    let table: Vec<Vec<u32>> = REFERENCE_MATRIX.iter().map(|r| r.to_vec()).collect();
    push("evaluation matrix matches", m.entries().to_indices() == table);
    push("evaluation matrix is symmetric", m.entries().is_symmetric());
    let gram: Vec<Vec<u32>> = reference_gram().iter().map(|r| r.to_vec()).collect();
    push("M M^t = I_sigma", m.gram().to_indices() == gram);
    push(
        "generator rows",
        spec.generator_matrix().map(|g| g == rows_of(&GENERATOR_ROWS)).unwrap_or(false),
    );
    push("control rows", spec.control_matrix() == rows_of(&CONTROL_ROWS));
    push("n = 16, k = 6", spec.n() == 16 && spec.k() == 6);
    let d = distance::min_distance_exhaustive(&spec, &Budget::default()).map(|r| r.d);
    push("minimum distance", d == Ok(MIN_DISTANCE));
    checks
}
