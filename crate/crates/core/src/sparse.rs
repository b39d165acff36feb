use std::collections::BTreeMap;

use crate::Scalar;

/// Add `value` into `map[key]`, dropping the entry if it cancels to zero.
pub(crate) fn accumulate<K: Ord, S: Scalar>(map: &mut BTreeMap<K, S>, key: K, value: S) {
    if value.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(slot) => {
            slot.insert(value);
        }
        std::collections::btree_map::Entry::Occupied(mut slot) => {
            let sum = slot.get().clone() + value;
            if sum.is_zero() {
                slot.remove();
            } else {
                *slot.get_mut() = sum;
            }
        }
    }
}

pub(crate) fn scale_map<K: Ord + Clone, S: Scalar>(
    map: &BTreeMap<K, S>,
    factor: &S,
) -> BTreeMap<K, S> {
    if factor.is_zero() {
        return BTreeMap::new();
    }
    map.iter()
        .map(|(k, v)| (k.clone(), v.clone() * factor.clone()))
        .collect()
}
