//! Perversities and their classical counterparts.
//!
//! A perversity assigns an integer level to every dimension `0..=n` such that
//! `δ(0) = 0` and each new value either extends the running maximum by one
//! or the running minimum by one. Consequently every prefix is a gap-free
//! interval containing `0` and `δ` is injective.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PerversityError {
    #[error("a perversity needs at least one value")]
    Empty,
    #[error("δ(0) must be 0, found {0}")]
    NonzeroStart(i64),
    #[error("δ({index}) = {value} is neither max+1 = {up} nor min-1 = {down}")]
    NotIntervalStep { index: usize, value: i64, up: i64, down: i64 },
    #[error("classical perversity must start at 0, found {0}")]
    ClassicalNonzeroStart(i64),
    #[error("classical perversity step p({index}) - p({}) = {step} is not 0 or 1", index - 1)]
    ClassicalStep { index: usize, step: i64 },
    #[error("perversity covers dimensions 0..={have} but the complex has dimension {need}")]
    TooShort { have: usize, need: usize },
    #[error("cannot parse perversity `{0}`")]
    Syntax(String),
}

/// A validated perversity on `{0, ..., n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Perversity {
    values: Vec<i64>,
}

impl<'de> Deserialize<'de> for Perversity {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let values = Vec::<i64>::deserialize(deserializer)?;
        Perversity::new(values).map_err(serde::de::Error::custom)
    }
}

impl Perversity {
    /// Validate a sequence `δ(0), ..., δ(n)`.
    pub fn new(values: Vec<i64>) -> Result<Self, PerversityError> {
        let (&first, rest) = values.split_first().ok_or(PerversityError::Empty)?;
        if first != 0 {
            return Err(PerversityError::NonzeroStart(first));
        }
        let (mut lo, mut hi) = (0, 0);
        for (i, &v) in rest.iter().enumerate() {
            if v == hi + 1 {
                hi = v;
            } else if v == lo - 1 {
                lo = v;
            } else {
                return Err(PerversityError::NotIntervalStep { index: i + 1, value: v, up: hi + 1, down: lo - 1 });
            }
        }
        Ok(Perversity { values })
    }

    /// `δ(k) = k`.
    pub fn top(n: usize) -> Self {
        Perversity { values: (0..=n as i64).collect() }
    }

    /// `δ(k) = -k`.
    pub fn bottom(n: usize) -> Self {
        Perversity { values: (0..=n as i64).map(|k| -k).collect() }
    }

    /// Parse `"0,-1,1"`, `"top"` or `"bottom"`; the named forms need the
    /// ambient dimension.
    pub fn parse(text: &str, n: usize) -> Result<Self, PerversityError> {
        match text.trim() {
            "top" => Ok(Self::top(n)),
            "bottom" => Ok(Self::bottom(n)),
            other => {
                let trimmed = other.trim_start_matches('[').trim_end_matches(']');
                let values = trimmed
                    .split(',')
                    .map(|t| t.trim().parse::<i64>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| PerversityError::Syntax(text.to_string()))?;
                Self::new(values)
            }
        }
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Largest dimension covered.
    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    /// `δ(dim)`.
    pub fn at(&self, dim: usize) -> i64 {
        self.values[dim]
    }

    pub fn min(&self) -> i64 {
        *self.values.iter().min().unwrap()
    }

    pub fn max(&self) -> i64 {
        *self.values.iter().max().unwrap()
    }

    /// `max δ - min δ`, which equals `n`.
    pub fn width(&self) -> i64 {
        self.max() - self.min()
    }

    /// `k ↦ -δ(k)`.
    pub fn negate(&self) -> Self {
        Perversity { values: self.values.iter().map(|v| -v).collect() }
    }

    /// Restrict to `0..=n`. Fails if the perversity is shorter.
    pub fn restrict_to(&self, n: usize) -> Result<Self, PerversityError> {
        if self.n() < n {
            return Err(PerversityError::TooShort { have: self.n(), need: n });
        }
        Ok(Perversity { values: self.values[..=n].to_vec() })
    }

    pub fn is_top(&self) -> bool {
        *self == Self::top(self.n())
    }

    pub fn is_bottom(&self) -> bool {
        *self == Self::bottom(self.n())
    }

    /// Down-steps become increments of the classical perversity.
    pub fn to_classical(&self) -> ClassicalPerversity {
        let mut p = Vec::with_capacity(self.values.len());
        let (mut lo, mut acc) = (0, 0);
        p.push(0);
        for &v in &self.values[1..] {
            if v < lo {
                lo = v;
                acc += 1;
            }
            p.push(acc);
        }
        ClassicalPerversity { values: p }
    }

    pub fn from_classical(p: &ClassicalPerversity) -> Self {
        let mut values = Vec::with_capacity(p.values.len());
        let (mut lo, mut hi) = (0, 0);
        values.push(0);
        for w in p.values.windows(2) {
            if w[1] > w[0] {
                lo -= 1;
                values.push(lo);
            } else {
                hi += 1;
                values.push(hi);
            }
        }
        Perversity { values }
    }
}

impl fmt::Display for Perversity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(i64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A non-decreasing `p` with `p(0) = 0` and unit or zero increments.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClassicalPerversity {
    values: Vec<i64>,
}

impl ClassicalPerversity {
    pub fn new(values: Vec<i64>) -> Result<Self, PerversityError> {
        let &first = values.first().ok_or(PerversityError::Empty)?;
        if first != 0 {
            return Err(PerversityError::ClassicalNonzeroStart(first));
        }
        for (i, w) in values.windows(2).enumerate() {
            let step = w[1] - w[0];
            if step != 0 && step != 1 {
                return Err(PerversityError::ClassicalStep { index: i + 1, step });
            }
        }
        Ok(ClassicalPerversity { values })
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }
}

/// Every perversity on `{0, ..., n}`, up-steps before down-steps at each
/// index. There are `2^n` of them.
pub fn enumerate_perversities(n: usize) -> Vec<Perversity> {
    let mut out = Vec::with_capacity(1 << n);
    let mut values = vec![0i64];
    fn go(values: &mut Vec<i64>, lo: i64, hi: i64, n: usize, out: &mut Vec<Perversity>) {
        if values.len() == n + 1 {
            out.push(Perversity { values: values.clone() });
            return;
        }
        values.push(hi + 1);
        go(values, lo, hi + 1, n, out);
        values.pop();
        values.push(lo - 1);
        go(values, lo - 1, hi, n, out);
        values.pop();
    }
    go(&mut values, 0, 0, n, &mut out);
    out
}
