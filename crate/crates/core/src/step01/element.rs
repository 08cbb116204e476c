use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::semantics::NeighbourhoodModel;
use crate::subset::{Subset, MAX_BASE};
use crate::syntax::Signature;

/// An element of the neighbourhood functor over a finite base set: a
/// neighbourhood system per modality together with a point, which stands
/// for the principal ultrafilter it generates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FunctorElement {
    base: usize,
    systems: BTreeMap<String, BTreeSet<Vec<Subset>>>,
    point: usize,
}

impl FunctorElement {
    /// An element with every neighbourhood system empty.
    pub fn new(base: usize, point: usize) -> Result<FunctorElement> {
        if base == 0 || base >= MAX_BASE {
            return Err(Error::Invalid(format!("base set size must be between 1 and {}", MAX_BASE - 1)));
        }
        if point >= base {
            return Err(Error::StateOutOfRange { state: point, size: base });
        }
        Ok(FunctorElement {
            base,
            systems: BTreeMap::new(),
            point,
        })
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn point(&self) -> usize {
        self.point
    }

    pub fn add(&mut self, name: &str, tuple: Vec<Subset>) -> Result<()> {
        if let Some(s) = tuple.iter().find(|s| !s.within(self.base)) {
            return Err(Error::BaseMismatch {
                set: s.to_string(),
                base: self.base,
            });
        }
        self.systems.entry(name.to_string()).or_default().insert(tuple);
        Ok(())
    }

    pub fn with(mut self, name: &str, tuple: Vec<Subset>) -> FunctorElement {
        self.add(name, tuple).expect("tuple outside base set");
        self
    }

    pub fn contains(&self, name: &str, tuple: &[Subset]) -> bool {
        self.systems.get(name).is_some_and(|s| s.contains(tuple))
    }

    pub fn system(&self, name: &str) -> impl Iterator<Item = &Vec<Subset>> {
        self.systems.get(name).into_iter().flatten()
    }

    /// The element a model induces at state `x`: its neighbourhood systems
    /// with `x` itself as the point.
    pub fn of_state(m: &NeighbourhoodModel, x: usize) -> Result<FunctorElement> {
        let mut t = FunctorElement::new(m.size(), x)?;
        for md in m.sig().iter() {
            for tuple in m.neighbourhoods(&md.name, x)? {
                t.add(&md.name, tuple.clone())?;
            }
        }
        Ok(t)
    }
}

impl fmt::Display for FunctorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "point {}", self.point)?;
        for (name, sys) in &self.systems {
            for t in sys {
                write!(f, " | {name}")?;
                if t.is_empty() {
                    f.write_str(" ()")?;
                }
                for s in t {
                    write!(f, " {s}")?;
                }
            }
        }
        Ok(())
    }
}

/// Numbering of the membership bits `(L, tuple)` for tuples drawn from a
/// fixed sorted list of subsets.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    base: usize,
    mods: Vec<(String, usize)>,
    sets: Vec<Subset>,
    offsets: Vec<usize>,
    total: usize,
}

impl Layout {
    /// Bits for every modality of `sig` over tuples from `sets`; errors if
    /// more than `cap` bits would be needed.
    pub(crate) fn new(base: usize, sig: &Signature, mut sets: Vec<Subset>, cap: u64) -> Result<Layout> {
        sets.sort();
        sets.dedup();
        let mut offsets = Vec::with_capacity(sig.len());
        let mut total: u64 = 0;
        for m in sig.iter() {
            offsets.push(total as usize);
            let n = (sets.len() as u64).checked_pow(m.arity as u32).unwrap_or(u64::MAX);
            total = total.saturating_add(n);
            if total > cap {
                return Err(Error::Resource(format!(
                    "neighbourhood systems over {} sets need more than {cap} membership bits",
                    sets.len()
                )));
            }
        }
        Ok(Layout {
            base,
            mods: sig.iter().map(|m| (m.name.clone(), m.arity)).collect(),
            sets,
            offsets,
            total: total as usize,
        })
    }

    /// Tuples over the full powerset of the base set.
    pub(crate) fn full(base: usize, sig: &Signature, cap: u64) -> Result<Layout> {
        if base >= 20 {
            return Err(Error::Resource(format!("powerset of {base} elements is too large to enumerate")));
        }
        Layout::new(base, sig, Subset::all(base).collect(), cap)
    }

    pub(crate) fn total(&self) -> usize {
        self.total
    }

    pub(crate) fn sets(&self) -> &[Subset] {
        &self.sets
    }

    pub(crate) fn bit(&self, name: &str, tuple: &[Subset]) -> Result<usize> {
        let m = self
            .mods
            .iter()
            .position(|(n, _)| n == name)
            .ok_or_else(|| Error::UnknownModality(name.to_string()))?;
        let arity = self.mods[m].1;
        if tuple.len() != arity {
            return Err(Error::ArityMismatch {
                name: name.to_string(),
                expected: arity,
                found: tuple.len(),
            });
        }
        let mut idx = 0;
        for s in tuple {
            let p = self
                .sets
                .binary_search(s)
                .map_err(|_| Error::Invalid(format!("set {s} is outside the enumerated algebra")))?;
            idx = idx * self.sets.len() + p;
        }
        Ok(self.offsets[m] + idx)
    }

    /// The `(modality, tuple)` a bit stands for.
    pub(crate) fn decode(&self, bit: usize) -> (&str, Vec<Subset>) {
        let m = self.offsets.partition_point(|&o| o <= bit) - 1;
        let (name, arity) = &self.mods[m];
        let mut idx = bit - self.offsets[m];
        let mut tuple = vec![Subset::EMPTY; *arity];
        for slot in tuple.iter_mut().rev() {
            *slot = self.sets[idx % self.sets.len()];
            idx /= self.sets.len();
        }
        (name, tuple)
    }

    pub(crate) fn element(&self, point: usize, bits: &[bool]) -> FunctorElement {
        let mut t = FunctorElement::new(self.base, point).expect("point in range");
        for (i, _) in bits.iter().enumerate().filter(|(_, b)| **b) {
            let (name, tuple) = self.decode(i);
            t.add(name, tuple).expect("tuple in range");
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_round_trips() {
        let sig = Signature::from_pairs([("Box", 1), ("p", 0), ("O", 2)]).unwrap();
        let l = Layout::full(2, &sig, 1 << 20).unwrap();
        assert_eq!(l.total(), 4 + 1 + 16);
        for b in 0..l.total() {
            let (name, tuple) = l.decode(b);
            assert_eq!(l.bit(name, &tuple).unwrap(), b);
        }
        assert!(Layout::full(3, &sig, 10).unwrap_err().is_resource());
    }

    #[test]
    fn element_display() {
        let t = FunctorElement::new(2, 1).unwrap().with("Box", vec![Subset::singleton(0)]);
        assert_eq!(t.to_string(), "point 1 | Box {0}");
        assert!(t.contains("Box", &[Subset::singleton(0)]));
        assert!(FunctorElement::new(2, 2).is_err());
    }
}
