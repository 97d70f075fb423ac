use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// A finite set of represented integers, each optionally paired with the
/// coordinates that produced it.
///
/// `complete` records whether the set is exhaustive for the requested range;
/// box-limited enumerations are never complete.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(from = "ValueSetRepr", into = "ValueSetRepr")]
pub struct ValueSet {
    entries: BTreeMap<i64, Option<Vec<i64>>>,
    pub complete: bool,
}

impl ValueSet {
    pub fn new(complete: bool) -> Self {
        ValueSet {
            entries: BTreeMap::new(),
            complete,
        }
    }

    /// Plain values with no coordinates attached.
    pub fn from_values<I: IntoIterator<Item = i64>>(values: I, complete: bool) -> Self {
        ValueSet {
            entries: values.into_iter().map(|v| (v, None)).collect(),
            complete,
        }
    }

    /// Insert `value`, keeping whichever witness is smaller under `key`.
    pub(crate) fn offer<K: Ord>(&mut self, value: i64, coords: Vec<i64>, key: impl Fn(&[i64]) -> K) {
        match self.entries.get_mut(&value) {
            Some(Some(old)) => {
                if key(&coords) < key(old) {
                    *old = coords;
                }
            }
            Some(slot @ None) => *slot = Some(coords),
            None => {
                self.entries.insert(value, Some(coords));
            }
        }
    }

    pub fn contains(&self, v: i64) -> bool {
        self.entries.contains_key(&v)
    }

    pub fn witness(&self, v: i64) -> Option<&[i64]> {
        self.entries.get(&v).and_then(|w| w.as_deref())
    }

    /// Values in ascending order.
    pub fn values(&self) -> impl DoubleEndedIterator<Item = i64> + '_ {
        self.entries.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Option<&[i64]>)> + '_ {
        self.entries.iter().map(|(v, w)| (*v, w.as_deref()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Preference order for witnesses: small coordinates first, nonnegative
/// before negative, earlier coordinates compared first.
pub(crate) fn witness_key(coords: &[i64]) -> Vec<(u64, bool)> {
    coords.iter().map(|&c| (c.unsigned_abs(), c < 0)).collect()
}

#[derive(Serialize, Deserialize)]
struct ValueSetRepr {
    complete: bool,
    values: Vec<ValueEntry>,
}

#[derive(Serialize, Deserialize)]
struct ValueEntry {
    value: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<i64>>,
}

impl From<ValueSetRepr> for ValueSet {
    fn from(r: ValueSetRepr) -> Self {
        ValueSet {
            entries: r.values.into_iter().map(|e| (e.value, e.witness)).collect(),
            complete: r.complete,
        }
    }
}

impl From<ValueSet> for ValueSetRepr {
    fn from(s: ValueSet) -> Self {
        ValueSetRepr {
            complete: s.complete,
            values: s
                .entries
                .into_iter()
                .map(|(value, witness)| ValueEntry { value, witness })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offer_keeps_preferred_witness() {
        let mut s = ValueSet::new(true);
        s.offer(25, vec![0, -5], witness_key);
        s.offer(25, vec![3, 4], witness_key);
        s.offer(25, vec![-3, 4], witness_key);
        s.offer(25, vec![0, 5], witness_key);
        assert_eq!(s.witness(25), Some(&[0, 5][..]));
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn json_round_trip() {
        let mut s = ValueSet::from_values([1, 2, 9], false);
        s.offer(5, vec![1, 2], witness_key);
        let j = serde_json::to_string(&s).unwrap();
        let back: ValueSet = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
    }
}
