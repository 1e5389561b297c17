//! The exponent grid `H = {0, .., q-2}^r` and the combinatorics living on it.
//!
//! Points of `H` index both monomials `Y^u` and torus points `alpha^i`. The
//! involution `sigma(u) = -u mod (q-1)` pairs each monomial with the one whose
//! evaluation vector it is not orthogonal to; [`OrderedH`] lists `H` with the
//! fixed points of `sigma` first and every other point next to its partner.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default cap on `n = (q-1)^r`.
pub const DEFAULT_MAX_LENGTH: usize = 1 << 20;

pub const MAX_DIMENSION: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExponentError {
    #[error("q = {0} is too small for a nontrivial exponent grid")]
    InvalidOrder(u32),
    #[error("dimension r = {0} is outside 1..={MAX_DIMENSION}")]
    InvalidDimension(usize),
    #[error("grid of (q-1)^r points exceeds the length budget {budget}")]
    DimensionTooLarge { budget: usize },
    #[error("point {point:?} does not lie in H for q = {q}, r = {r}")]
    OutOfGrid { point: Vec<i64>, q: u32, r: usize },
    #[error("malformed exponent set: {0}")]
    Parse(String),
    #[error("polytope: {0}")]
    Polytope(String),
}

/// The grid `H` for a given `(q, r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Grid {
    q: u32,
    r: usize,
}

impl Grid {
    pub fn new(q: u32, r: usize) -> Result<Self, ExponentError> {
        Self::with_budget(q, r, DEFAULT_MAX_LENGTH)
    }

    pub fn with_budget(q: u32, r: usize, max_len: usize) -> Result<Self, ExponentError> {
        if q < 3 {
            return Err(ExponentError::InvalidOrder(q));
        }
        if r == 0 || r > MAX_DIMENSION {
            return Err(ExponentError::InvalidDimension(r));
        }
        let side = (q - 1) as u128;
        let n = side.pow(r as u32);
        if n > max_len as u128 {
            return Err(ExponentError::DimensionTooLarge { budget: max_len });
        }
        Ok(Grid { q, r })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Side length `q - 1`.
    pub fn side(&self) -> u32 {
        self.q - 1
    }

    /// `n = (q-1)^r`.
    pub fn len(&self) -> usize {
        (self.side() as usize).pow(self.r as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        v.len() == self.r && v.iter().all(|&c| c >= 0 && c < self.side() as i64)
    }

    pub fn point(&self, coords: &[i64]) -> Result<ExponentVector, ExponentError> {
        if !self.contains(coords) {
            return Err(ExponentError::OutOfGrid {
                point: coords.to_vec(),
                q: self.q,
                r: self.r,
            });
        }
        Ok(ExponentVector(coords.iter().map(|&c| c as u32).collect()))
    }

    /// Componentwise reduction mod `q - 1` into `H`.
    pub fn reduce(&self, v: &[i64]) -> ExponentVector {
        assert_eq!(v.len(), self.r, "vector length must equal r");
        let side = self.side() as i64;
        ExponentVector(v.iter().map(|&c| c.rem_euclid(side) as u32).collect())
    }

    /// `sigma(u) = -u mod (q-1)`.
    pub fn sigma(&self, u: &ExponentVector) -> ExponentVector {
        let side = self.side();
        ExponentVector(u.0.iter().map(|&c| (side - c) % side).collect())
    }

    /// `reduce(u + v)`.
    pub fn add(&self, u: &ExponentVector, v: &ExponentVector) -> ExponentVector {
        let side = self.side();
        ExponentVector(u.0.iter().zip(&v.0).map(|(&a, &b)| (a + b) % side).collect())
    }

    /// `reduce(u - v)`.
    pub fn sub(&self, u: &ExponentVector, v: &ExponentVector) -> ExponentVector {
        let side = self.side();
        ExponentVector(
            u.0.iter()
                .zip(&v.0)
                .map(|(&a, &b)| (a + side - b) % side)
                .collect(),
        )
    }

    /// `<u, i> mod (q-1)`.
    pub fn pairing(&self, u: &ExponentVector, i: &ExponentVector) -> u32 {
        let side = self.side() as u64;
        (u.0.iter()
            .zip(&i.0)
            .map(|(&a, &b)| a as u64 * b as u64)
            .sum::<u64>()
            % side) as u32
    }

    /// Position of `u` in lexicographic order of `H` (first coordinate most
    /// significant).
    pub fn lex_rank(&self, u: &ExponentVector) -> usize {
        let side = self.side() as usize;
        u.0.iter().fold(0, |acc, &c| acc * side + c as usize)
    }

    pub fn lex_unrank(&self, mut rank: usize) -> ExponentVector {
        let side = self.side() as usize;
        let mut coords = vec![0u32; self.r];
        for c in coords.iter_mut().rev() {
            *c = (rank % side) as u32;
            rank /= side;
        }
        ExponentVector(coords)
    }

    /// All of `H` in lexicographic order.
    pub fn iter_lex(self) -> impl Iterator<Item = ExponentVector> {
        (0..self.len()).map(move |k| self.lex_unrank(k))
    }

    pub fn is_sigma_fixed(&self, u: &ExponentVector) -> bool {
        let side = self.side();
        u.0.iter().all(|&c| (2 * c) % side == 0)
    }
}

/// A point of `H`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A subset of `H`, deduplicated and sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentSet {
    grid: Grid,
    members: BTreeSet<ExponentVector>,
}

impl ExponentSet {
    pub fn empty(grid: Grid) -> Self {
        ExponentSet {
            grid,
            members: BTreeSet::new(),
        }
    }

    pub fn full(grid: Grid) -> Self {
        ExponentSet {
            grid,
            members: grid.iter_lex().collect(),
        }
    }

    pub fn from_points<I>(grid: Grid, points: I) -> Result<Self, ExponentError>
    where
        I: IntoIterator,
        I::Item: AsRef<[i64]>,
    {
        let members = points
            .into_iter()
            .map(|p| grid.point(p.as_ref()))
            .collect::<Result<_, _>>()?;
        Ok(ExponentSet { grid, members })
    }

    pub fn from_vectors<I: IntoIterator<Item = ExponentVector>>(grid: Grid, it: I) -> Self {
        let members: BTreeSet<_> = it.into_iter().collect();
        debug_assert!(members
            .iter()
            .all(|u| u.dim() == grid.r() && u.0.iter().all(|&c| c < grid.side())));
        ExponentSet { grid, members }
    }

    /// Parses the `"c1,c2;c1,c2;..."` text format. Whitespace is ignored;
    /// the empty string is the empty set.
    pub fn parse(grid: Grid, text: &str) -> Result<Self, ExponentError> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let points = parse_points(&cleaned)?;
        if let Some(p) = points.iter().find(|p| p.len() != grid.r()) {
            return Err(ExponentError::Parse(format!(
                "point {p:?} has {} coordinates, expected {}",
                p.len(),
                grid.r()
            )));
        }
        Self::from_points(grid, points)
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, u: &ExponentVector) -> bool {
        self.members.contains(u)
    }

    pub fn iter(&self) -> impl Iterator<Item = &ExponentVector> {
        self.members.iter()
    }

    pub fn is_subset(&self, other: &ExponentSet) -> bool {
        self.members.is_subset(&other.members)
    }

    /// `U' = { sigma(u) : u in U }`.
    pub fn sigma_image(&self) -> ExponentSet {
        ExponentSet::from_vectors(self.grid, self.members.iter().map(|u| self.grid.sigma(u)))
    }

    /// `H \ U`.
    pub fn complement(&self) -> ExponentSet {
        ExponentSet::from_vectors(
            self.grid,
            self.grid.iter_lex().filter(|u| !self.members.contains(u)),
        )
    }

    /// `U^perp = H \ U'`, the exponent set of the dual code.
    pub fn dual_set(&self) -> ExponentSet {
        let image = self.sigma_image();
        image.complement()
    }
}

impl fmt::Display for ExponentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, u) in self.members.iter().enumerate() {
            if k > 0 {
                f.write_str(";")?;
            }
            write!(f, "{u}")?;
        }
        Ok(())
    }
}

/// Parses `"c1,c2;c1,c2"` into raw integer points (no grid checks).
pub fn parse_points(text: &str) -> Result<Vec<Vec<i64>>, ExponentError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(vec![]);
    }
    text.split(';')
        .map(|point| {
            point
                .split(',')
                .map(|c| {
                    i64::from_str(c.trim())
                        .map_err(|_| ExponentError::Parse(format!("bad coordinate {c:?}")))
                })
                .collect()
        })
        .collect()
}

/// `dual_set` as a free function over any `U`.
pub fn dual_set(u: &ExponentSet) -> ExponentSet {
    u.dual_set()
}

/// Componentwise `v mod (q-1)`.
pub fn reduce(v: &[i64], q: u32) -> ExponentVector {
    let side = (q - 1) as i64;
    ExponentVector(v.iter().map(|&c| c.rem_euclid(side) as u32).collect())
}

/// `{ reduce(v) : v in V }`; duplicates collapse.
pub fn reduce_set<I>(grid: Grid, points: I) -> ExponentSet
where
    I: IntoIterator,
    I::Item: AsRef<[i64]>,
{
    ExponentSet::from_vectors(grid, points.into_iter().map(|v| grid.reduce(v.as_ref())))
}

/// Counts the fixed points of `sigma` on `H` by enumeration.
pub fn sigma_fixed_count(grid: Grid) -> usize {
    grid.iter_lex().filter(|u| grid.sigma(u) == *u).count()
}

/// `H` listed in the canonical sigma-paired order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedH {
    grid: Grid,
    points: Vec<ExponentVector>,
    // lex rank -> position
    position: Vec<usize>,
    fixed: usize,
}

impl OrderedH {
    /// Fixed points of `sigma` first, lexicographically; then each remaining
    /// point in lexicographic order immediately followed by its image.
    pub fn new(grid: Grid) -> Self {
        let n = grid.len();
        let mut points = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        for (k, slot) in placed.iter_mut().enumerate() {
            let u = grid.lex_unrank(k);
            if grid.is_sigma_fixed(&u) {
                *slot = true;
                points.push(u);
            }
        }
        let fixed = points.len();
        for k in 0..n {
            if placed[k] {
                continue;
            }
            let u = grid.lex_unrank(k);
            let s = grid.sigma(&u);
            placed[k] = true;
            placed[grid.lex_rank(&s)] = true;
            points.push(u);
            points.push(s);
        }
        let mut position = vec![0; n];
        for (j, u) in points.iter().enumerate() {
            position[grid.lex_rank(u)] = j;
        }
        OrderedH {
            grid,
            points,
            position,
            fixed,
        }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ExponentVector] {
        &self.points
    }

    pub fn get(&self, j: usize) -> &ExponentVector {
        &self.points[j]
    }

    pub fn position(&self, u: &ExponentVector) -> usize {
        self.position[self.grid.lex_rank(u)]
    }

    /// Number of sigma-fixed points, which occupy positions `0..fixed_count()`.
    pub fn fixed_count(&self) -> usize {
        self.fixed
    }

    /// Position of `sigma(u_j)`.
    pub fn sigma_position(&self, j: usize) -> usize {
        if j < self.fixed {
            j
        } else if (j - self.fixed).is_multiple_of(2) {
            j + 1
        } else {
            j - 1
        }
    }

    /// Positions of the members of `u`, ascending.
    pub fn positions_of(&self, u: &ExponentSet) -> Vec<usize> {
        let mut pos: Vec<_> = u.iter().map(|v| self.position(v)).collect();
        pos.sort_unstable();
        pos
    }
}

/// Builds the canonical ordering of `H` for `(q, r)`.
pub fn enumerate_h(q: u32, r: usize) -> Result<OrderedH, ExponentError> {
    Ok(OrderedH::new(Grid::new(q, r)?))
}

/// One inequality `a . x <= b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inequality {
    pub a: Vec<i64>,
    pub b: i64,
}

/// A polytope given by inequalities, enumerated inside an explicit box.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polytope {
    pub r: usize,
    #[serde(rename = "ineqs", default)]
    pub inequalities: Vec<Inequality>,
    pub bounds: Vec<[i64; 2]>,
}

impl Polytope {
    pub fn validate(&self) -> Result<(), ExponentError> {
        if self.r == 0 {
            return Err(ExponentError::Polytope("r must be positive".into()));
        }
        if self.bounds.len() != self.r {
            return Err(ExponentError::Polytope(format!(
                "expected {} bounds, found {}",
                self.r,
                self.bounds.len()
            )));
        }
        if let Some([lo, hi]) = self.bounds.iter().find(|[lo, hi]| lo > hi) {
            return Err(ExponentError::Polytope(format!("empty bound [{lo}, {hi}]")));
        }
        if let Some(ineq) = self.inequalities.iter().find(|i| i.a.len() != self.r) {
            return Err(ExponentError::Polytope(format!(
                "inequality {:?} has {} coefficients, expected {}",
                ineq.a,
                ineq.a.len(),
                self.r
            )));
        }
        Ok(())
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.bounds
            .iter()
            .zip(x)
            .all(|([lo, hi], c)| lo <= c && c <= hi)
            && self
                .inequalities
                .iter()
                .all(|i| i.a.iter().zip(x).map(|(a, c)| a * c).sum::<i64>() <= i.b)
    }

    /// Axis-aligned box `lo_i <= x_i <= hi_i`.
    pub fn rectangle(bounds: &[[i64; 2]]) -> Self {
        Polytope {
            r: bounds.len(),
            inequalities: vec![],
            bounds: bounds.to_vec(),
        }
    }
}

/// Integer points of `P` inside its bounds, in lexicographic order.
pub fn lattice_points(p: &Polytope) -> Result<Vec<Vec<i64>>, ExponentError> {
    p.validate()?;
    let mut out = Vec::new();
    let mut x: Vec<i64> = p.bounds.iter().map(|b| b[0]).collect();
    loop {
        if p.contains(&x) {
            out.push(x.clone());
        }
        // odometer, last coordinate fastest
        let mut axis = p.r;
        loop {
            if axis == 0 {
                return Ok(out);
            }
            axis -= 1;
            if x[axis] < p.bounds[axis][1] {
                x[axis] += 1;
                break;
            }
            x[axis] = p.bounds[axis][0];
        }
    }
}
