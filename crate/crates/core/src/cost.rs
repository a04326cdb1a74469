//! Cost rescaling, exact extremes and approximation ratios.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::encodings::Problem;
use crate::error::{Error, Result};

/// Largest register for which exhaustive sweeps are attempted.
pub const BRUTE_FORCE_CAP: usize = 29;
/// Largest register for which a full cost table is kept in memory.
pub const TABLE_CAP: usize = 26;

/// Relative gap subtracted from the lower bound so no rescaled cost is zero.
pub const LOWER_BOUND_GAP: f64 = 1e-9;

/// `(c_max - cost) / (c_max - c_min)`: 1 at the optimum, 0 at the worst.
pub fn approximation_ratio(cost: f64, c_min: f64, c_max: f64) -> Result<f64> {
    if !(c_min < c_max) {
        return Err(Error::DegenerateRange(c_min));
    }
    if !(c_min <= cost && cost <= c_max) {
        return Err(Error::CostOutOfRange { cost, c_min, c_max });
    }
    Ok((c_max - cost) / (c_max - c_min))
}

/// Affine map of raw costs into `(0, 1]` for the filter.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CostModel {
    lower: f64,
    upper: f64,
}

impl CostModel {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !(lower < upper) || !lower.is_finite() || !upper.is_finite() {
            return Err(Error::InvalidBounds { lower, upper });
        }
        Ok(Self { lower, upper })
    }

    /// Uses the problem's bounds with the lower one pushed down by
    /// `LOWER_BOUND_GAP * (upper - lower)`.
    pub fn for_problem(problem: &Problem) -> Result<Self> {
        let (lo, hi) = problem.bounds()?;
        if !(lo < hi) {
            return Err(Error::InvalidBounds { lower: lo, upper: hi });
        }
        Self::new(lo - LOWER_BOUND_GAP * (hi - lo), hi)
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    #[inline]
    pub fn rescale(&self, raw: f64) -> f64 {
        (raw - self.lower) / (self.upper - self.lower)
    }
}

/// Exact minimum and maximum raw cost over all `2^N` strings.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Extremes {
    pub c_min: f64,
    pub c_max: f64,
    /// Strings attaining `c_min`.
    pub optima: u64,
}

impl Extremes {
    pub fn ratio(&self, cost: f64) -> Result<f64> {
        approximation_ratio(cost, self.c_min, self.c_max)
    }

    /// Optimality uses exact equality on raw costs.
    pub fn is_optimal(&self, cost: f64) -> bool {
        cost == self.c_min
    }

    /// Streams every string through `cost`; nothing is retained.
    pub fn exhaustive(problem: &Problem) -> Result<Self> {
        let n = problem.num_qubits();
        if n > BRUTE_FORCE_CAP {
            return Err(Error::SizeCap { what: "exhaustive search", got: n, cap: BRUTE_FORCE_CAP });
        }
        let total = 1u64 << n;
        let chunk = 1u64 << 12;
        let chunks = total.div_ceil(chunk);
        let ext = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut e = Partial::EMPTY;
                for w in c * chunk..((c + 1) * chunk).min(total) {
                    e.push(problem.cost_word(w));
                }
                e
            })
            .reduce(|| Partial::EMPTY, Partial::merge);
        Ok(Self { c_min: ext.min, c_max: ext.max, optima: ext.count_min })
    }
}

#[derive(Clone, Copy)]
struct Partial {
    min: f64,
    max: f64,
    count_min: u64,
}

impl Partial {
    const EMPTY: Partial = Partial { min: f64::INFINITY, max: f64::NEG_INFINITY, count_min: 0 };

    fn push(&mut self, c: f64) {
        if c < self.min {
            self.min = c;
            self.count_min = 1;
        } else if c == self.min {
            self.count_min += 1;
        }
        self.max = self.max.max(c);
    }

    fn merge(a: Partial, b: Partial) -> Partial {
        let (min, count_min) = if a.min < b.min {
            (a.min, a.count_min)
        } else if b.min < a.min {
            (b.min, b.count_min)
        } else {
            (a.min, a.count_min + b.count_min)
        };
        Partial { min, max: a.max.max(b.max), count_min }
    }
}

/// Raw cost of every string, indexed by packed word.
#[derive(Clone, Debug)]
pub struct CostTable {
    costs: Vec<f64>,
    extremes: Extremes,
}

impl CostTable {
    pub fn build(problem: &Problem) -> Result<Self> {
        let n = problem.num_qubits();
        if n > TABLE_CAP {
            return Err(Error::SizeCap { what: "cost table", got: n, cap: TABLE_CAP });
        }
        let costs: Vec<f64> = (0..1u64 << n).into_par_iter().map(|w| problem.cost_word(w)).collect();
        let mut e = Partial::EMPTY;
        for &c in &costs {
            e.push(c);
        }
        Ok(Self { costs, extremes: Extremes { c_min: e.min, c_max: e.max, optima: e.count_min } })
    }

    pub fn num_qubits(&self) -> usize {
        self.costs.len().trailing_zeros() as usize
    }

    #[inline]
    pub fn cost_word(&self, w: u64) -> f64 {
        self.costs[w as usize]
    }

    pub fn cost(&self, x: &BitString) -> f64 {
        self.cost_word(x.word())
    }

    pub fn costs(&self) -> &[f64] {
        &self.costs
    }

    pub fn extremes(&self) -> Extremes {
        self.extremes
    }
}

/// A problem bundled with its rescaling, exact extremes and (when small
/// enough) a full cost table.
#[derive(Clone, Debug)]
pub struct Objective {
    problem: Problem,
    model: CostModel,
    extremes: Extremes,
    table: Option<CostTable>,
}

impl Objective {
    pub fn new(problem: Problem) -> Result<Self> {
        let model = CostModel::for_problem(&problem)?;
        let (table, extremes) = if problem.num_qubits() <= TABLE_CAP {
            let t = CostTable::build(&problem)?;
            let e = t.extremes();
            (Some(t), e)
        } else {
            (None, Extremes::exhaustive(&problem)?)
        };
        Self::check(&problem, &model, &extremes)?;
        Ok(Self { problem, model, extremes, table })
    }

    /// Skips the exhaustive sweep; `extremes` must come from elsewhere.
    pub fn with_extremes(problem: Problem, extremes: Extremes) -> Result<Self> {
        let model = CostModel::for_problem(&problem)?;
        Self::check(&problem, &model, &extremes)?;
        Ok(Self { problem, model, extremes, table: None })
    }

    fn check(problem: &Problem, model: &CostModel, e: &Extremes) -> Result<()> {
        if !(e.c_min < e.c_max) {
            return Err(Error::DegenerateRange(e.c_min));
        }
        if e.c_min < model.lower() || e.c_max > model.upper() {
            return Err(Error::InvalidInstance(format!(
                "{} bounds [{}, {}] do not contain costs [{}, {}]",
                problem.kind(),
                model.lower(),
                model.upper(),
                e.c_min,
                e.c_max
            )));
        }
        Ok(())
    }

    pub fn problem(&self) -> &Problem {
        &self.problem
    }

    pub fn model(&self) -> &CostModel {
        &self.model
    }

    pub fn extremes(&self) -> Extremes {
        self.extremes
    }

    pub fn num_qubits(&self) -> usize {
        self.problem.num_qubits()
    }

    pub fn table(&self) -> Option<&CostTable> {
        self.table.as_ref()
    }

    #[inline]
    pub fn raw_word(&self, w: u64) -> f64 {
        match &self.table {
            Some(t) => t.cost_word(w),
            None => self.problem.cost_word(w),
        }
    }

    #[inline]
    pub fn rescaled_word(&self, w: u64) -> f64 {
        self.model.rescale(self.raw_word(w))
    }

    /// Approximation ratio of a raw cost; costs are known to lie in range.
    #[inline]
    pub fn ratio(&self, raw: f64) -> f64 {
        (self.extremes.c_max - raw) / (self.extremes.c_max - self.extremes.c_min)
    }
}
