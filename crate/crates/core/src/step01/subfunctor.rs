use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::prop::SetValuation;
use crate::sat::{Cnf, Expr};
use crate::subset::Subset;
use crate::syntax::{Formula, LogicPresentation, Signature};

use super::element::{FunctorElement, Layout};
use super::formula::{instantiate, Step01Formula};

/// Default bound on the number of functor elements, axiom instances and
/// membership bits any single step01 operation may enumerate.
pub const DEFAULT_STEP01_CAP: u64 = 1 << 20;

const MAX_DECISIONS: u64 = 1 << 24;

/// How [`decide_step01_derivable`] decides.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    /// Check the formula at every element of the subfunctor.
    Semantic,
    /// Propositional entailment from the axiom instances over the Boolean
    /// algebra generated by the sets occurring in the formula.
    Syntactic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step01Check {
    Sound,
    Counterexample { valuation: SetValuation, element: FunctorElement },
}

impl Step01Check {
    pub fn is_sound(&self) -> bool {
        matches!(self, Step01Check::Sound)
    }
}

/// Axioms over a signature, read at a fixed finite base set.
#[derive(Clone, Debug)]
pub struct Step01Context {
    sig: Signature,
    axioms: Vec<Formula>,
    base: usize,
    cap: u64,
}

impl Step01Context {
    pub fn new(sig: Signature, axioms: Vec<Formula>, base: usize) -> Result<Step01Context> {
        if base == 0 || base > 16 {
            return Err(Error::Resource(format!("base set size {base} is outside 1..16")));
        }
        for a in &axioms {
            sig.check(a)?;
            if !a.classify().is_non_iterative() {
                return Err(Error::Iterative(a.to_string()));
            }
        }
        Ok(Step01Context {
            sig,
            axioms,
            base,
            cap: DEFAULT_STEP01_CAP,
        })
    }

    pub fn from_logic(l: &LogicPresentation, base: usize) -> Result<Step01Context> {
        Step01Context::new(l.sig.clone(), l.all_axioms()?, base)
    }

    pub fn with_cap(mut self, cap: u64) -> Step01Context {
        self.cap = cap;
        self
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn base(&self) -> usize {
        self.base
    }

    fn full_layout(&self) -> Result<Layout> {
        let layout = Layout::full(self.base, &self.sig, 62)?;
        let count = (self.base as u64).saturating_mul(1u64 << layout.total());
        if count > self.cap {
            return Err(Error::Resource(format!(
                "{count} functor elements over {} points exceed the cap of {}",
                self.base, self.cap
            )));
        }
        Ok(layout)
    }

    /// Instances of every axiom under every valuation into `sets`.
    fn instances(&self, sets: &[Subset]) -> Result<Vec<Step01Formula>> {
        let mut out = Vec::new();
        for a in &self.axioms {
            let vars: Vec<String> = a.variables().into_iter().collect();
            let n = (sets.len() as u64).checked_pow(vars.len() as u32).unwrap_or(u64::MAX);
            if n.saturating_add(out.len() as u64) > self.cap {
                return Err(Error::Resource(format!(
                    "axiom `{a}` has {n} instances over {} sets, over the cap of {}",
                    sets.len(),
                    self.cap
                )));
            }
            for tau in valuations_over(&vars, sets, self.base) {
                out.push(instantiate(a, &tau)?);
            }
        }
        Ok(out)
    }

    /// Encodings `(point, bits)` of the subfunctor's elements, in order.
    fn member_codes(&self, layout: &Layout) -> Result<Vec<(usize, u64)>> {
        let instances = self.instances(layout.sets())?;
        let mut out = Vec::new();
        let mut bits = vec![false; layout.total()];
        for point in 0..self.base {
            let exprs = instances
                .iter()
                .map(|i| i.root.to_expr(layout, point))
                .collect::<Result<Vec<Expr>>>()?;
            for code in 0..(1u64 << layout.total()) {
                decode_bits(code, &mut bits);
                if exprs.iter().all(|e| e.eval(&bits)) {
                    out.push((point, code));
                }
            }
        }
        Ok(out)
    }

    /// All elements over the base set satisfying every axiom instance,
    /// ordered by point and then by the integer whose bit `i` records
    /// membership bit `i`.
    pub fn elements(&self) -> Result<Vec<FunctorElement>> {
        let layout = self.full_layout()?;
        let mut bits = vec![false; layout.total()];
        Ok(self
            .member_codes(&layout)?
            .into_iter()
            .map(|(p, code)| {
                decode_bits(code, &mut bits);
                layout.element(p, &bits)
            })
            .collect())
    }

    /// Whether `t` satisfies every axiom instance.
    pub fn contains(&self, t: &FunctorElement) -> Result<bool> {
        if t.base() != self.base {
            return Err(Error::BaseMismatch {
                set: format!("element over {} points", t.base()),
                base: self.base,
            });
        }
        let sets: Vec<Subset> = Subset::all(self.base).collect();
        for i in self.instances(&sets)? {
            if !super::eval_step01(t, &i)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether every instance of `axiom` holds at every element of the
    /// subfunctor; otherwise the first failing valuation and element.
    pub fn check_sound(&self, axiom: &Formula) -> Result<Step01Check> {
        if !axiom.classify().is_non_iterative() {
            return Err(Error::Iterative(axiom.to_string()));
        }
        let layout = self.full_layout()?;
        let members = self.member_codes(&layout)?;
        let vars: Vec<String> = axiom.variables().into_iter().collect();
        let work = SetValuation::count(vars.len(), self.base).saturating_mul(members.len().max(1) as u64);
        if work > self.cap.saturating_mul(64) {
            return Err(Error::Resource(format!("soundness check needs {work} evaluations")));
        }
        let mut bits = vec![false; layout.total()];
        for tau in SetValuation::enumerate(&vars, self.base) {
            let inst = instantiate(axiom, &tau)?;
            let exprs = (0..self.base)
                .map(|p| inst.root.to_expr(&layout, p))
                .collect::<Result<Vec<_>>>()?;
            for &(p, code) in &members {
                decode_bits(code, &mut bits);
                if !exprs[p].eval(&bits) {
                    return Ok(Step01Check::Counterexample {
                        valuation: tau,
                        element: layout.element(p, &bits),
                    });
                }
            }
        }
        Ok(Step01Check::Sound)
    }

    /// Whether `psi` holds at every element of the subfunctor.
    pub fn derivable(&self, psi: &Step01Formula, backend: Backend) -> Result<bool> {
        if psi.base != self.base {
            return Err(Error::BaseMismatch {
                set: format!("formula over {} elements", psi.base),
                base: self.base,
            });
        }
        match backend {
            Backend::Semantic => self.derivable_semantic(psi),
            Backend::Syntactic => self.derivable_syntactic(psi),
        }
    }

    fn derivable_semantic(&self, psi: &Step01Formula) -> Result<bool> {
        let layout = self.full_layout()?;
        let mut bits = vec![false; layout.total()];
        let goals = (0..self.base)
            .map(|p| psi.root.to_expr(&layout, p))
            .collect::<Result<Vec<_>>>()?;
        for (p, code) in self.member_codes(&layout)? {
            decode_bits(code, &mut bits);
            if !goals[p].eval(&bits) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn derivable_syntactic(&self, psi: &Step01Formula) -> Result<bool> {
        let occurring = psi.sets();
        let blocks = blocks(self.base, &occurring);
        if blocks.len() > 16 {
            return Err(Error::Resource(format!("{} blocks generate too large an algebra", blocks.len())));
        }
        let algebra: Vec<Subset> = (0u32..1 << blocks.len())
            .map(|m| {
                blocks
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| m >> i & 1 == 1)
                    .fold(Subset::EMPTY, |acc, (_, b)| acc.union(*b))
            })
            .collect();
        let layout = Layout::new(self.base, &self.sig, algebra, self.cap)?;
        let instances = self.instances(layout.sets())?;
        for block in &blocks {
            let point = block.iter().next().expect("blocks are nonempty");
            let mut cnf = Cnf::new(layout.total());
            for i in &instances {
                cnf.assert(i.root.to_expr(&layout, point)?);
            }
            cnf.assert(psi.root.to_expr(&layout, point)?.not());
            if cnf.solve(MAX_DECISIONS)?.is_some() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The atoms of the Boolean algebra generated by `sets`: maximal sets of
/// points no member of `sets` separates, ordered by least element.
fn blocks(base: usize, sets: &BTreeSet<Subset>) -> Vec<Subset> {
    let mut out: Vec<Subset> = Vec::new();
    let mut seen = Subset::EMPTY;
    for x in 0..base {
        if seen.contains(x) {
            continue;
        }
        let block = Subset::from_elems((x..base).filter(|&y| sets.iter().all(|s| s.contains(x) == s.contains(y))));
        seen = seen.union(block);
        out.push(block);
    }
    out
}

fn decode_bits(code: u64, bits: &mut [bool]) {
    for (i, b) in bits.iter_mut().enumerate() {
        *b = code >> i & 1 == 1;
    }
}

/// Valuations of `vars` into members of `sets`, first variable most
/// significant.
pub(crate) fn valuations_over<'a>(
    vars: &'a [String],
    sets: &'a [Subset],
    base: usize,
) -> impl Iterator<Item = SetValuation> + 'a {
    let radix = sets.len() as u64;
    let total = radix.checked_pow(vars.len() as u32).unwrap_or(u64::MAX);
    (0..total).map(move |mut idx| {
        let mut tau = SetValuation::new(base);
        for x in vars.iter().rev() {
            tau.insert(x.clone(), sets[(idx % radix) as usize]).expect("sets within base");
            idx /= radix;
        }
        tau
    })
}

pub fn subfunctor_elements(axioms: &[Formula], sig: &Signature, base: usize) -> Result<Vec<FunctorElement>> {
    Step01Context::new(sig.clone(), axioms.to_vec(), base)?.elements()
}

pub fn check_step01_sound(axiom: &Formula, axioms: &[Formula], sig: &Signature, base: usize) -> Result<Step01Check> {
    Step01Context::new(sig.clone(), axioms.to_vec(), base)?.check_sound(axiom)
}

pub fn decide_step01_derivable(
    psi: &Step01Formula,
    axioms: &[Formula],
    sig: &Signature,
    backend: Backend,
) -> Result<bool> {
    Step01Context::new(sig.clone(), axioms.to_vec(), psi.base)?.derivable(psi, backend)
}
