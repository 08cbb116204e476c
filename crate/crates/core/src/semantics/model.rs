use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::prop::SetValuation;
use crate::subset::{Subset, MAX_BASE};
use crate::syntax::{Formula, Signature};

/// Valuation of variables into sets of states.
pub type Valuation = SetValuation;

/// A finite neighbourhood model. States are `0..size`; for every declared
/// modality `L` of arity `k` and state `x`, `nu(L, x)` is a set of
/// `k`-tuples of state sets. Nullary modalities act as atoms: `L` holds at
/// `x` iff the empty tuple belongs to `nu(L, x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighbourhoodModel {
    sig: Signature,
    size: usize,
    nu: Vec<Vec<BTreeSet<Vec<Subset>>>>,
}

impl NeighbourhoodModel {
    /// A model with every neighbourhood system empty.
    pub fn new(sig: Signature, size: usize) -> Result<Self> {
        if size == 0 || size >= MAX_BASE {
            return Err(Error::Invalid(format!("model size must be between 1 and {}", MAX_BASE - 1)));
        }
        let nu = vec![vec![BTreeSet::new(); size]; sig.len()];
        Ok(NeighbourhoodModel { sig, size, nu })
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn states(&self) -> Subset {
        Subset::full(self.size)
    }

    fn slot(&self, name: &str) -> Result<usize> {
        self.sig.position(name).ok_or_else(|| Error::UnknownModality(name.to_string()))
    }

    fn check_state(&self, x: usize) -> Result<()> {
        if x >= self.size {
            return Err(Error::StateOutOfRange { state: x, size: self.size });
        }
        Ok(())
    }

    pub fn add_neighbourhood(&mut self, name: &str, x: usize, tuple: Vec<Subset>) -> Result<()> {
        let m = self.slot(name)?;
        self.check_state(x)?;
        let arity = self.sig.arity(name).expect("declared");
        if tuple.len() != arity {
            return Err(Error::ArityMismatch {
                name: name.to_string(),
                expected: arity,
                found: tuple.len(),
            });
        }
        if let Some(s) = tuple.iter().find(|s| !s.within(self.size)) {
            return Err(Error::BaseMismatch {
                set: s.to_string(),
                base: self.size,
            });
        }
        self.nu[m][x].insert(tuple);
        Ok(())
    }

    /// Replaces `nu(L, x)` wholesale.
    pub fn set_neighbourhoods(&mut self, name: &str, x: usize, system: BTreeSet<Vec<Subset>>) -> Result<()> {
        let m = self.slot(name)?;
        self.check_state(x)?;
        self.nu[m][x].clear();
        for t in system {
            self.add_neighbourhood(name, x, t)?;
        }
        Ok(())
    }

    /// Interprets a nullary modality as the given set of states.
    pub fn set_atom(&mut self, name: &str, ext: Subset) -> Result<()> {
        let m = self.slot(name)?;
        for x in 0..self.size {
            self.nu[m][x].clear();
            if ext.contains(x) {
                self.add_neighbourhood(name, x, vec![])?;
            }
        }
        Ok(())
    }

    pub fn neighbourhoods(&self, name: &str, x: usize) -> Result<&BTreeSet<Vec<Subset>>> {
        let m = self.slot(name)?;
        self.check_state(x)?;
        Ok(&self.nu[m][x])
    }

    /// The isomorphic copy in which state `x` becomes `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> NeighbourhoodModel {
        assert_eq!(perm.len(), self.size);
        let map = |s: &Subset| Subset::from_elems(s.iter().map(|x| perm[x]));
        let mut out = self.clone();
        for (m, per_state) in self.nu.iter().enumerate() {
            for (x, sys) in per_state.iter().enumerate() {
                out.nu[m][perm[x]] = sys.iter().map(|t| t.iter().map(map).collect()).collect();
            }
        }
        out
    }

    /// Extension of a closed formula.
    pub fn extension(&self, f: &Formula) -> Result<Subset> {
        self.ext(f, None)
    }

    /// Extension of a formula whose variables are interpreted by `pi`.
    pub fn extension_with(&self, pi: &Valuation, f: &Formula) -> Result<Subset> {
        if pi.base() != self.size {
            return Err(Error::Invalid(format!(
                "valuation over {} elements used in a model with {} states",
                pi.base(),
                self.size
            )));
        }
        self.ext(f, Some(pi))
    }

    fn ext(&self, f: &Formula, pi: Option<&Valuation>) -> Result<Subset> {
        let all = self.states();
        Ok(match f {
            Formula::Bot => Subset::EMPTY,
            Formula::Top => all,
            Formula::Var(x) => match pi {
                Some(pi) => pi.get(x).ok_or_else(|| Error::Unassigned(x.clone()))?,
                None => return Err(Error::NotClosed(f.to_string())),
            },
            Formula::Neg(a) => self.ext(a, pi)?.complement(self.size),
            Formula::And(a, b) => self.ext(a, pi)?.intersection(self.ext(b, pi)?),
            Formula::Or(a, b) => self.ext(a, pi)?.union(self.ext(b, pi)?),
            Formula::Imp(a, b) => self.ext(a, pi)?.complement(self.size).union(self.ext(b, pi)?),
            Formula::Iff(a, b) => {
                let (l, r) = (self.ext(a, pi)?, self.ext(b, pi)?);
                Subset(!(l.0 ^ r.0)).intersection(all)
            }
            Formula::Apply(name, args) => {
                let m = self.slot(name)?;
                let arity = self.sig.arity(name).expect("declared");
                if args.len() != arity {
                    return Err(Error::ArityMismatch {
                        name: name.clone(),
                        expected: arity,
                        found: args.len(),
                    });
                }
                let tuple = args.iter().map(|g| self.ext(g, pi)).collect::<Result<Vec<_>>>()?;
                Subset::from_elems((0..self.size).filter(|&x| self.nu[m][x].contains(&tuple)))
            }
        })
    }
}

/// Whether the closed formula `f` holds at state `x`.
pub fn model_check(m: &NeighbourhoodModel, x: usize, f: &Formula) -> Result<bool> {
    m.check_state(x)?;
    Ok(m.extension(f)?.contains(x))
}

/// Whether `f` holds at `x` with variables interpreted by `pi`.
pub fn model_check_val(m: &NeighbourhoodModel, pi: &Valuation, x: usize, f: &Formula) -> Result<bool> {
    m.check_state(x)?;
    Ok(m.extension_with(pi, f)?.contains(x))
}

pub fn extension(m: &NeighbourhoodModel, f: &Formula) -> Result<Subset> {
    m.extension(f)
}
