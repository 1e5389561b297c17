//! Generalized toric codes `C_U`: evaluation of the monomials `Y^u`, `u` in
//! `U`, at every point of the torus `(F_q^*)^r`.
//!
//! Coordinates of every vector in this module follow the canonical order of
//! [`OrderedH`]: position `j` holds the value at the torus point
//! `alpha^{i_j}`, which is also the coefficient of `X^{i_j}` when the vector
//! is read as an element of `A = F_q[X_1..X_r] / (X_k^{q-1} - 1)`.

use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::exponents::{ExponentError, ExponentSet, ExponentVector, Grid, OrderedH};
use crate::field::{FieldElement, FieldError, FiniteField};
use crate::linalg::Matrix;

/// Largest `n` for which a full `n x n` evaluation matrix is materialized.
pub const MAX_MATRIX_LENGTH: usize = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("exponent set U is empty")]
    EmptyU,
    #[error("expected {expected} values, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("vectors belong to different (q, r) contexts")]
    ContextMismatch,
    #[error("length n = {n} exceeds the matrix budget {budget}")]
    DimensionTooLarge { n: usize, budget: usize },
    #[error("field element index {0} out of range")]
    BadElement(u32),
    #[error(transparent)]
    Exponent(#[from] ExponentError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// The field, the grid `H` and its canonical ordering, shared by every code
/// of a given `(q, r)`.
#[derive(Debug)]
pub struct Torus {
    field: Arc<FiniteField>,
    order: OrderedH,
}

impl Torus {
    pub fn new(field: Arc<FiniteField>, r: usize) -> Result<Arc<Self>, CodeError> {
        let grid = Grid::new(field.q(), r)?;
        Ok(Arc::new(Torus {
            field,
            order: OrderedH::new(grid),
        }))
    }

    /// Convenience constructor building `F_q` as well.
    pub fn build(q: u32, r: usize) -> Result<Arc<Self>, CodeError> {
        let field = FiniteField::new(q as u64)?;
        Self::new(Arc::new(field), r)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn field_arc(&self) -> Arc<FiniteField> {
        Arc::clone(&self.field)
    }

    pub fn order(&self) -> &OrderedH {
        &self.order
    }

    pub fn grid(&self) -> Grid {
        self.order.grid()
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn r(&self) -> usize {
        self.grid().r()
    }

    /// Code length `n = (q-1)^r`.
    pub fn n(&self) -> usize {
        self.order.len()
    }

    /// `ev(Y^u)`: the vector `(alpha^<u, i_j>)_j`.
    pub fn ev(&self, u: &ExponentVector) -> Codeword {
        let grid = self.grid();
        let values = self
            .order
            .points()
            .iter()
            .map(|i| self.field.alpha_pow(grid.pairing(u, i) as i64))
            .collect();
        self.codeword_unchecked(values)
    }

    /// The torus point `alpha^{i_j}` at position `j`, one field element per
    /// axis.
    pub fn torus_point(&self, j: usize) -> Vec<FieldElement> {
        self.order
            .get(j)
            .coords()
            .iter()
            .map(|&c| self.field.alpha_pow(c as i64))
            .collect()
    }

    pub fn zero(&self) -> Codeword {
        self.codeword_unchecked(vec![FieldElement::ZERO; self.n()])
    }

    /// The unit `X^0` of `A`: one at the position of `i = 0`.
    pub fn delta(&self) -> Codeword {
        let mut c = self.zero();
        let origin = self.order.position(&self.grid().reduce(&vec![0; self.r()]));
        c.values[origin] = FieldElement::ONE;
        c
    }

    pub fn codeword(&self, values: Vec<FieldElement>) -> Result<Codeword, CodeError> {
        if values.len() != self.n() {
            return Err(CodeError::LengthMismatch {
                expected: self.n(),
                found: values.len(),
            });
        }
        if let Some(bad) = values.iter().find(|x| x.index() >= self.q()) {
            return Err(CodeError::BadElement(bad.index()));
        }
        Ok(self.codeword_unchecked(values))
    }

    pub fn codeword_from_indices(&self, values: &[u32]) -> Result<Codeword, CodeError> {
        self.codeword(values.iter().map(|&x| FieldElement::from_index(x)).collect())
    }

    fn codeword_unchecked(&self, values: Vec<FieldElement>) -> Codeword {
        Codeword {
            q: self.q(),
            r: self.r(),
            values,
        }
    }

    fn check(&self, c: &Codeword) -> Result<(), CodeError> {
        if c.q != self.q() || c.r != self.r() || c.values.len() != self.n() {
            return Err(CodeError::ContextMismatch);
        }
        Ok(())
    }

    /// Multiplication by `X^a` in `A`: the coefficient at `X^i` becomes the
    /// old coefficient at `X^(i - a)`.
    pub fn shift(&self, c: &Codeword, a: &[i64]) -> Result<Codeword, CodeError> {
        self.check(c)?;
        let grid = self.grid();
        let a = grid.reduce(a);
        let values = self
            .order
            .points()
            .iter()
            .map(|i| c.values[self.order.position(&grid.sub(i, &a))])
            .collect();
        Ok(self.codeword_unchecked(values))
    }

    /// Product in `A`: `r`-dimensional cyclic convolution, each axis modulo
    /// `q - 1`.
    pub fn convolve(&self, a: &Codeword, b: &Codeword) -> Result<Codeword, CodeError> {
        self.check(a)?;
        self.check(b)?;
        let field = self.field();
        let grid = self.grid();
        let pts = self.order.points();
        let mut out = vec![FieldElement::ZERO; self.n()];
        for (i, &x) in pts.iter().zip(&a.values) {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in pts.iter().zip(&b.values) {
                if y.is_zero() {
                    continue;
                }
                let k = self.order.position(&grid.add(i, j));
                out[k] = field.add(out[k], field.mul(x, y));
            }
        }
        Ok(self.codeword_unchecked(out))
    }

    /// Evaluates `sum lambda_v Y^v` at every torus point by direct
    /// exponentiation. Exponents are arbitrary integer vectors; nothing is
    /// reduced mod `q - 1` first.
    pub fn evaluate_polynomial(
        &self,
        terms: &[(Vec<i64>, FieldElement)],
    ) -> Result<Codeword, CodeError> {
        let field = self.field();
        let r = self.r();
        let mut values = Vec::with_capacity(self.n());
        for j in 0..self.n() {
            let t = self.torus_point(j);
            let mut acc = FieldElement::ZERO;
            for (v, coeff) in terms {
                if v.len() != r {
                    return Err(CodeError::LengthMismatch {
                        expected: r,
                        found: v.len(),
                    });
                }
                let mut mono = *coeff;
                for (&tk, &vk) in t.iter().zip(v) {
                    mono = field.mul(mono, field.pow(tk, vk)?);
                }
                acc = field.add(acc, mono);
            }
            values.push(acc);
        }
        Ok(self.codeword_unchecked(values))
    }

    /// The full evaluation matrix `M`.
    pub fn evaluation_matrix(self: &Arc<Self>) -> Result<EvaluationMatrix, CodeError> {
        EvaluationMatrix::new(Arc::clone(self))
    }

    /// Rows `alpha^<u, i_l>` for the given exponents.
    fn rows_for<'a, I>(&self, exps: I) -> Matrix
    where
        I: IntoIterator<Item = &'a ExponentVector>,
    {
        let rows = exps.into_iter().map(|u| self.ev(u).values).collect();
        Matrix::from_rows(self.n(), rows)
    }
}

/// A vector of `F_q^n` tied to a `(q, r)` context.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Codeword {
    q: u32,
    r: usize,
    values: Vec<FieldElement>,
}

impl Codeword {
    pub fn values(&self) -> &[FieldElement] {
        &self.values
    }

    pub fn indices(&self) -> Vec<u32> {
        self.values.iter().map(|x| x.index()).collect()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.values.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, field: &FiniteField, s: FieldElement) -> Codeword {
        Codeword {
            values: self.values.iter().map(|&x| field.mul(s, x)).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, field: &FiniteField, other: &Codeword) -> Result<Codeword, CodeError> {
        if self.q != other.q || self.r != other.r || self.len() != other.len() {
            return Err(CodeError::ContextMismatch);
        }
        Ok(Codeword {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| field.add(a, b))
                .collect(),
            ..self.clone()
        })
    }
}

/// The symmetric `n x n` matrix `M = (alpha^<u_j, i_l>)` with rows and
/// columns both in canonical order.
#[derive(Debug, Clone)]
pub struct EvaluationMatrix {
    torus: Arc<Torus>,
    entries: Matrix,
}

impl EvaluationMatrix {
    pub fn new(torus: Arc<Torus>) -> Result<Self, CodeError> {
        let n = torus.n();
        if n > MAX_MATRIX_LENGTH {
            return Err(CodeError::DimensionTooLarge {
                n,
                budget: MAX_MATRIX_LENGTH,
            });
        }
        let rows: Vec<Vec<FieldElement>> = torus
            .order()
            .points()
            .par_iter()
            .map(|u| torus.ev(u).values)
            .collect();
        let entries = Matrix::from_rows(n, rows);
        Ok(EvaluationMatrix { torus, entries })
    }

    pub fn torus(&self) -> &Arc<Torus> {
        &self.torus
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    /// The permutation matrix of `sigma` in canonical order.
    pub fn sigma_matrix(&self) -> Matrix {
        let order = self.torus.order();
        let n = order.len();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            m[(j, order.sigma_position(j))] = FieldElement::ONE;
        }
        m
    }

    /// `M * M^t`, which equals `(-1)^r I_sigma`.
    pub fn gram(&self) -> Matrix {
        self.entries
            .mul(self.torus.field(), &self.entries.transpose())
    }

    /// `(-1)^r I_sigma M`.
    pub fn inverse(&self) -> Matrix {
        let field = self.torus.field();
        let s = field.minus_one_pow(self.torus.r());
        let mut inv = self.sigma_matrix().mul(field, &self.entries);
        for j in 0..inv.rows() {
            for x in inv.row_mut(j) {
                *x = field.mul(s, *x);
            }
        }
        inv
    }
}

/// A generalized toric code `C_U`.
#[derive(Debug, Clone)]
pub struct CodeSpec {
    torus: Arc<Torus>,
    u: ExponentSet,
    // members of U in canonical order; message coordinate m <-> exponents[m]
    exponents: Vec<ExponentVector>,
}

impl CodeSpec {
    pub fn new(torus: Arc<Torus>, u: ExponentSet) -> Result<Self, CodeError> {
        if u.grid() != torus.grid() {
            return Err(CodeError::ContextMismatch);
        }
        let order = torus.order();
        let exponents = order
            .positions_of(&u)
            .into_iter()
            .map(|j| order.get(j).clone())
            .collect();
        Ok(CodeSpec {
            torus,
            u,
            exponents,
        })
    }

    /// Parses `U` from the `"c1,c2;..."` text format.
    pub fn parse(torus: Arc<Torus>, text: &str) -> Result<Self, CodeError> {
        let u = ExponentSet::parse(torus.grid(), text)?;
        Self::new(torus, u)
    }

    pub fn torus(&self) -> &Arc<Torus> {
        &self.torus
    }

    pub fn field(&self) -> &FiniteField {
        self.torus.field()
    }

    pub fn u(&self) -> &ExponentSet {
        &self.u
    }

    /// Members of `U` in canonical order; this is the message layout.
    pub fn message_exponents(&self) -> &[ExponentVector] {
        &self.exponents
    }

    pub fn n(&self) -> usize {
        self.torus.n()
    }

    pub fn k(&self) -> usize {
        self.u.len()
    }

    pub fn dual_spec(&self) -> CodeSpec {
        CodeSpec::new(Arc::clone(&self.torus), self.u.dual_set())
            .expect("dual set lives on the same grid")
    }

    /// Rows of `M` indexed by `U`, in canonical order.
    pub fn generator_matrix(&self) -> Result<Matrix, CodeError> {
        if self.u.is_empty() {
            return Err(CodeError::EmptyU);
        }
        Ok(self.torus.rows_for(&self.exponents))
    }

    /// Rows of `M` indexed by `U^perp`; `0 x n` when `U = H`.
    pub fn control_matrix(&self) -> Matrix {
        let dual = self.dual_spec();
        self.torus.rows_for(&dual.exponents)
    }

    /// `sum_u lambda_u ev(Y^u)` with `lambda` laid out as
    /// [`message_exponents`](Self::message_exponents).
    pub fn encode(&self, message: &[FieldElement]) -> Result<Codeword, CodeError> {
        if message.len() != self.k() {
            return Err(CodeError::LengthMismatch {
                expected: self.k(),
                found: message.len(),
            });
        }
        let field = self.field();
        let mut out = self.torus.zero();
        for (u, &lambda) in self.exponents.iter().zip(message) {
            if lambda.is_zero() {
                continue;
            }
            let row = self.torus.ev(u);
            for (x, &y) in out.values.iter_mut().zip(&row.values) {
                *x = field.add(*x, field.mul(lambda, y));
            }
        }
        Ok(out)
    }

    /// Syndrome test against the control matrix.
    pub fn is_codeword(&self, c: &Codeword) -> Result<bool, CodeError> {
        self.torus.check(c)?;
        let h = self.control_matrix();
        Ok(h.mul_vec(self.field(), &c.values).iter().all(|x| x.is_zero()))
    }
}
