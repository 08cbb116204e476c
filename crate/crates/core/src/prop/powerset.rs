use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::subset::{Subset, MAX_BASE};
use crate::syntax::Formula;

/// A valuation of variables into subsets of a finite base set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetValuation {
    base: usize,
    map: BTreeMap<String, Subset>,
}

impl SetValuation {
    pub fn new(base: usize) -> SetValuation {
        assert!(base <= MAX_BASE, "base set larger than {MAX_BASE}");
        SetValuation {
            base,
            map: BTreeMap::new(),
        }
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn insert(&mut self, x: impl Into<String>, s: Subset) -> Result<()> {
        if !s.within(self.base) {
            return Err(Error::BaseMismatch {
                set: s.to_string(),
                base: self.base,
            });
        }
        self.map.insert(x.into(), s);
        Ok(())
    }

    pub fn with(mut self, x: impl Into<String>, s: Subset) -> SetValuation {
        self.insert(x, s).expect("subset outside base set");
        self
    }

    pub fn get(&self, x: &str) -> Option<Subset> {
        self.map.get(x).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, Subset)> {
        self.map.iter().map(|(k, v)| (k, *v))
    }

    /// All valuations of `vars` into subsets of `{0..base}`, in
    /// lexicographic order of the subset tuple (first variable most
    /// significant, subsets ordered by bitmask).
    pub fn enumerate(vars: &[String], base: usize) -> impl Iterator<Item = SetValuation> + '_ {
        let radix = 1u64 << base;
        let total = radix.checked_pow(vars.len() as u32).unwrap_or(u64::MAX);
        (0..total).map(move |mut idx| {
            let mut v = SetValuation::new(base);
            for x in vars.iter().rev() {
                v.map.insert(x.clone(), Subset(idx % radix));
                idx /= radix;
            }
            v
        })
    }

    /// Number of valuations [`SetValuation::enumerate`] produces, saturating.
    pub fn count(nvars: usize, base: usize) -> u64 {
        (1u64 << base.min(63)).checked_pow(nvars as u32).unwrap_or(u64::MAX)
    }
}

impl fmt::Display for SetValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, s)) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}={s}")?;
        }
        Ok(())
    }
}

/// Evaluates a propositional formula in the powerset algebra of the base
/// set of `tau`.
pub fn eval_in_powerset(f: &Formula, tau: &SetValuation) -> Result<Subset> {
    let n = tau.base;
    Ok(match f {
        Formula::Bot => Subset::EMPTY,
        Formula::Top => Subset::full(n),
        Formula::Var(x) => tau.get(x).ok_or_else(|| Error::Unassigned(x.clone()))?,
        Formula::Neg(a) => eval_in_powerset(a, tau)?.complement(n),
        Formula::And(a, b) => eval_in_powerset(a, tau)?.intersection(eval_in_powerset(b, tau)?),
        Formula::Or(a, b) => eval_in_powerset(a, tau)?.union(eval_in_powerset(b, tau)?),
        Formula::Imp(a, b) => eval_in_powerset(a, tau)?
            .complement(n)
            .union(eval_in_powerset(b, tau)?),
        Formula::Iff(a, b) => {
            let (x, y) = (eval_in_powerset(a, tau)?, eval_in_powerset(b, tau)?);
            Subset(!(x.0 ^ y.0)).intersection(Subset::full(n))
        }
        Formula::Apply(..) => return Err(Error::NotPropositional(f.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intersection_example() {
        let tau = SetValuation::new(3)
            .with("a", Subset::from_elems([0, 1]))
            .with("b", Subset::from_elems([1, 2]));
        let f = Formula::and(Formula::var("a"), Formula::var("b"));
        assert_eq!(eval_in_powerset(&f, &tau).unwrap(), Subset::singleton(1));
        assert_eq!(eval_in_powerset(&Formula::Top, &tau).unwrap(), Subset::full(3));
    }

    #[test]
    fn unmapped_variable() {
        let tau = SetValuation::new(2);
        assert!(matches!(eval_in_powerset(&Formula::var("a"), &tau), Err(Error::Unassigned(_))));
    }

    #[test]
    fn enumeration_order() {
        let vars = vec!["a".to_string(), "b".to_string()];
        let all: Vec<_> = SetValuation::enumerate(&vars, 1).collect();
        assert_eq!(all.len(), 4);
        assert_eq!(all[1].get("a"), Some(Subset::EMPTY));
        assert_eq!(all[1].get("b"), Some(Subset::full(1)));
        assert_eq!(all[2].get("a"), Some(Subset::full(1)));
        assert_eq!(SetValuation::count(2, 1), 4);
    }
}
