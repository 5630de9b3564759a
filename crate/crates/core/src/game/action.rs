use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Values closer than this are merged when an action set is built from
/// unsorted input.
pub const MERGE_DISTANCE: f64 = 1e-15;

/// A single action in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct ActionValue(f64);

impl ActionValue {
    pub const ZERO: ActionValue = ActionValue(0.0);
    pub const ONE: ActionValue = ActionValue(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(ActionValue(value))
        } else {
            Err(Error::usage(format!(
                "action value {value} is outside [0, 1]"
            )))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl fmt::Display for ActionValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Finite, nonempty, strictly increasing set of actions.
#[derive(Debug, Clone, PartialEq)]
pub struct ActionSet {
    values: Vec<ActionValue>,
}

impl ActionSet {
    /// Builds a set from values that are already strictly increasing.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidInstance("action set is empty".into()));
        }
        let values = values
            .into_iter()
            .map(|v| ActionValue::new(v).map_err(|_| out_of_range(v)))
            .collect::<Result<Vec<_>>>()?;
        if let Some(w) = values.windows(2).find(|w| w[0].get() >= w[1].get()) {
            return Err(Error::InvalidInstance(format!(
                "action values must be strictly increasing, found {} before {}",
                w[0], w[1]
            )));
        }
        Ok(ActionSet { values })
    }

    /// Sorts, then merges values within [`MERGE_DISTANCE`] of the last kept one.
    pub fn from_unsorted(mut values: Vec<f64>) -> Result<Self> {
        if let Some(&bad) = values.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(out_of_range(bad));
        }
        values.sort_by(f64::total_cmp);
        let mut kept: Vec<f64> = Vec::with_capacity(values.len());
        for v in values {
            match kept.last() {
                Some(&last) if v - last < MERGE_DISTANCE => {}
                _ => kept.push(v),
            }
        }
        ActionSet::new(kept)
    }

    pub fn singleton(value: ActionValue) -> Self {
        ActionSet {
            values: vec![value],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> impl Iterator<Item = ActionValue> + '_ {
        self.values.iter().copied()
    }

    pub fn as_slice(&self) -> &[ActionValue] {
        &self.values
    }

    pub fn min(&self) -> ActionValue {
        self.values[0]
    }

    pub fn max(&self) -> ActionValue {
        self.values[self.values.len() - 1]
    }

    /// Bitwise membership.
    pub fn contains(&self, a: ActionValue) -> bool {
        self.values
            .binary_search_by(|v| v.get().total_cmp(&a.get()))
            .is_ok()
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.get()).collect()
    }
}

fn out_of_range(v: f64) -> Error {
    Error::InvalidInstance(format!("action value {v} is outside [0, 1]"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range() {
        assert!(ActionValue::new(-1e-300).is_err());
        assert!(ActionValue::new(1.0 + f64::EPSILON).is_err());
        assert!(ActionValue::new(f64::NAN).is_err());
        assert!(ActionSet::from_unsorted(vec![0.5, 1.5]).is_err());
    }

    #[test]
    fn new_requires_strict_order() {
        assert!(ActionSet::new(vec![0.1, 0.1]).is_err());
        assert!(ActionSet::new(vec![0.2, 0.1]).is_err());
        assert!(ActionSet::new(vec![]).is_err());
        assert_eq!(ActionSet::new(vec![0.1, 0.2]).unwrap().len(), 2);
    }

    #[test]
    fn unsorted_input_is_sorted_and_merged() {
        let s = ActionSet::from_unsorted(vec![0.7, 0.2, 0.2 + 1e-16, 0.0, 0.7]).unwrap();
        assert_eq!(s.to_vec(), vec![0.0, 0.2, 0.7]);
        let s = ActionSet::from_unsorted(vec![0.3, 0.3 + 1e-14]).unwrap();
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn membership_is_exact() {
        let s = ActionSet::new(vec![0.25, 0.5]).unwrap();
        assert!(s.contains(ActionValue::new(0.5).unwrap()));
        assert!(!s.contains(ActionValue::new(0.5 - f64::EPSILON).unwrap()));
    }
}
