use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

/// A modal operator together with its arity. Nullary modalities are the
/// propositional atoms of the logic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Modality {
    pub name: String,
    pub arity: usize,
}

impl Modality {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        Modality {
            name: name.into(),
            arity,
        }
    }
}

/// A similarity type: modalities in declaration order, names unique.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    mods: Vec<Modality>,
    index: BTreeMap<String, usize>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a signature from `(name, arity)` pairs.
    pub fn from_pairs<'a, I: IntoIterator<Item = (&'a str, usize)>>(pairs: I) -> Result<Self> {
        let mut sig = Signature::new();
        for (name, arity) in pairs {
            sig.declare(name, arity)?;
        }
        Ok(sig)
    }

    /// Declares a modality. Redeclaring with the same arity is a no-op.
    pub fn declare(&mut self, name: &str, arity: usize) -> Result<()> {
        if let Some(&i) = self.index.get(name) {
            let expected = self.mods[i].arity;
            if expected != arity {
                return Err(Error::ConflictingArity {
                    name: name.to_string(),
                    expected,
                    found: arity,
                });
            }
            return Ok(());
        }
        self.index.insert(name.to_string(), self.mods.len());
        self.mods.push(Modality::new(name, arity));
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Modality> {
        self.index.get(name).map(|&i| &self.mods[i])
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.get(name).map(|m| m.arity)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Modality> {
        self.mods.iter()
    }

    pub fn len(&self) -> usize {
        self.mods.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mods.is_empty()
    }

    /// Adds every modality of `other` not yet declared here.
    pub fn merge(&mut self, other: &Signature) -> Result<()> {
        for m in other.iter() {
            self.declare(&m.name, m.arity)?;
        }
        Ok(())
    }

    /// Declares every modality applied in `f`, taking arities from usage.
    pub fn absorb(&mut self, f: &Formula) -> Result<()> {
        for m in f.modalities() {
            self.declare(&m.name, m.arity)?;
        }
        Ok(())
    }

    /// Checks that every application in `f` uses a declared modality with
    /// the declared arity.
    pub fn check(&self, f: &Formula) -> Result<()> {
        let mut err = None;
        f.visit(&mut |g| {
            if err.is_some() {
                return;
            }
            if let Formula::Apply(name, args) = g {
                match self.arity(name) {
                    None => err = Some(Error::UnknownModality(name.clone())),
                    Some(k) if k != args.len() => {
                        err = Some(Error::ArityMismatch {
                            name: name.clone(),
                            expected: k,
                            found: args.len(),
                        })
                    }
                    _ => {}
                }
            }
        });
        err.map_or(Ok(()), Err)
    }
}

/// Formulae over a similarity type with propositional variables.
///
/// The same tree serves as object formula (closed: no `Var`), as axiom
/// schema, and as propositional formula (no `Apply`). `Top`, `Or`, `Imp` and
/// `Iff` are kept as nodes; every semantic operation gives them their
/// Boolean meaning.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Bot,
    Top,
    Var(String),
    Neg(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Apply(String, Vec<Formula>),
}

/// Syntactic class of a formula with respect to modal nesting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rank {
    Rank1,
    NonIterative,
    Iterative,
}

impl Rank {
    pub fn is_non_iterative(self) -> bool {
        !matches!(self, Rank::Iterative)
    }

    pub fn describe(self) -> &'static str {
        match self {
            Rank::Rank1 => "rank-1",
            Rank::NonIterative => "non-iterative (not rank-1)",
            Rank::Iterative => "iterative",
        }
    }
}

impl Formula {
    pub fn var(name: &str) -> Formula {
        Formula::Var(name.to_string())
    }

    /// A nullary modality, i.e. a propositional atom.
    pub fn atom(name: &str) -> Formula {
        Formula::Apply(name.to_string(), Vec::new())
    }

    pub fn apply(name: &str, args: Vec<Formula>) -> Formula {
        Formula::Apply(name.to_string(), args)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(f: Formula) -> Formula {
        Formula::Neg(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    /// Left-nested conjunction; the empty conjunction is `Top`.
    pub fn conj<I: IntoIterator<Item = Formula>>(fs: I) -> Formula {
        fs.into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::Top)
    }

    /// Left-nested disjunction; the empty disjunction is `Bot`.
    pub fn disj<I: IntoIterator<Item = Formula>>(fs: I) -> Formula {
        fs.into_iter().reduce(Formula::or).unwrap_or(Formula::Bot)
    }

    /// Immediate subformulae.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Bot | Formula::Top | Formula::Var(_) => Vec::new(),
            Formula::Neg(a) => vec![a],
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                vec![a, b]
            }
            Formula::Apply(_, args) => args.iter().collect(),
        }
    }

    /// Pre-order traversal.
    pub fn visit<F: FnMut(&Formula)>(&self, f: &mut F) {
        f(self);
        for c in self.children() {
            c.visit(f);
        }
    }

    pub fn is_closed(&self) -> bool {
        let mut closed = true;
        self.visit(&mut |g| {
            if matches!(g, Formula::Var(_)) {
                closed = false;
            }
        });
        closed
    }

    /// True iff the formula contains no modal application at all.
    pub fn is_propositional(&self) -> bool {
        let mut prop = true;
        self.visit(&mut |g| {
            if matches!(g, Formula::Apply(..)) {
                prop = false;
            }
        });
        prop
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut vars = BTreeSet::new();
        self.visit(&mut |g| {
            if let Formula::Var(x) = g {
                vars.insert(x.clone());
            }
        });
        vars
    }

    /// Applied modalities, arity taken from the number of arguments.
    pub fn modalities(&self) -> BTreeSet<Modality> {
        let mut mods = BTreeSet::new();
        self.visit(&mut |g| {
            if let Formula::Apply(name, args) = g {
                mods.insert(Modality::new(name.clone(), args.len()));
            }
        });
        mods
    }

    pub fn classify(&self) -> Rank {
        fn walk(f: &Formula, under: bool, nested: &mut bool, bare_var: &mut bool) {
            match f {
                Formula::Var(_) if !under => *bare_var = true,
                Formula::Apply(_, args) => {
                    if under {
                        *nested = true;
                    }
                    for a in args {
                        walk(a, true, nested, bare_var);
                    }
                }
                _ => {
                    for c in f.children() {
                        walk(c, under, nested, bare_var);
                    }
                }
            }
        }
        let (mut nested, mut bare_var) = (false, false);
        walk(self, false, &mut nested, &mut bare_var);
        if nested {
            Rank::Iterative
        } else if bare_var {
            Rank::NonIterative
        } else {
            Rank::Rank1
        }
    }

    /// Set of distinct subformulae, including the formula itself.
    pub fn subformulae(&self) -> BTreeSet<&Formula> {
        let mut out = BTreeSet::new();
        fn walk<'a>(f: &'a Formula, out: &mut BTreeSet<&'a Formula>) {
            if out.insert(f) {
                for c in f.children() {
                    walk(c, out);
                }
            }
        }
        walk(self, &mut out);
        out
    }

    /// Number of distinct subformulae.
    pub fn size(&self) -> usize {
        self.subformulae().len()
    }

    /// Smallest set containing `self` that is closed under subformulae and
    /// under negation of members that are not themselves negations.
    pub fn closure(&self) -> BTreeSet<Formula> {
        let mut out: BTreeSet<Formula> = BTreeSet::new();
        for g in self.subformulae() {
            out.insert(g.clone());
            if !matches!(g, Formula::Neg(_)) {
                out.insert(Formula::neg(g.clone()));
            }
        }
        out
    }

    pub fn apply_substitution(&self, s: &Substitution) -> Formula {
        self.map_vars(&|x| s.get(x).cloned())
    }

    /// Replaces the variable `x` by `by`, i.e. `self[by/x]`.
    pub fn replace_var(&self, x: &str, by: &Formula) -> Formula {
        self.map_vars(&|y| (y == x).then(|| by.clone()))
    }

    fn map_vars(&self, f: &dyn Fn(&str) -> Option<Formula>) -> Formula {
        let bin = |a: &Formula, b: &Formula| (Box::new(a.map_vars(f)), Box::new(b.map_vars(f)));
        match self {
            Formula::Bot => Formula::Bot,
            Formula::Top => Formula::Top,
            Formula::Var(x) => f(x).unwrap_or_else(|| self.clone()),
            Formula::Neg(a) => Formula::Neg(Box::new(a.map_vars(f))),
            Formula::And(a, b) => {
                let (a, b) = bin(a, b);
                Formula::And(a, b)
            }
            Formula::Or(a, b) => {
                let (a, b) = bin(a, b);
                Formula::Or(a, b)
            }
            Formula::Imp(a, b) => {
                let (a, b) = bin(a, b);
                Formula::Imp(a, b)
            }
            Formula::Iff(a, b) => {
                let (a, b) = bin(a, b);
                Formula::Iff(a, b)
            }
            Formula::Apply(name, args) => {
                Formula::Apply(name.clone(), args.iter().map(|g| g.map_vars(f)).collect())
            }
        }
    }

    /// Turns every variable into a nullary modality of the same name.
    pub fn vars_to_atoms(&self) -> Formula {
        self.map_vars(&|x| Some(Formula::atom(x)))
    }

    /// Constant folding of `Bot`/`Top` and double negation; preserves
    /// propositional equivalence.
    pub fn simplify(&self) -> Formula {
        use Formula::*;
        match self {
            Bot | Top | Var(_) => self.clone(),
            Apply(name, args) => Apply(name.clone(), args.iter().map(Formula::simplify).collect()),
            Neg(a) => match a.simplify() {
                Bot => Top,
                Top => Bot,
                Neg(b) => *b,
                a => Formula::neg(a),
            },
            And(a, b) => match (a.simplify(), b.simplify()) {
                (Bot, _) | (_, Bot) => Bot,
                (Top, x) | (x, Top) => x,
                (x, y) => Formula::and(x, y),
            },
            Or(a, b) => match (a.simplify(), b.simplify()) {
                (Top, _) | (_, Top) => Top,
                (Bot, x) | (x, Bot) => x,
                (x, y) => Formula::or(x, y),
            },
            Imp(a, b) => match (a.simplify(), b.simplify()) {
                (Bot, _) | (_, Top) => Top,
                (Top, x) => x,
                (x, Bot) => Formula::neg(x).simplify(),
                (x, y) => Formula::imp(x, y),
            },
            Iff(a, b) => match (a.simplify(), b.simplify()) {
                (Top, x) | (x, Top) => x,
                (Bot, x) | (x, Bot) => Formula::neg(x).simplify(),
                (x, y) => Formula::iff(x, y),
            },
        }
    }
}

/// A finite map from variable names to formulae; unmapped variables stay
/// fixed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Substitution(BTreeMap<String, Formula>);

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, x: impl Into<String>, f: Formula) {
        self.0.insert(x.into(), f);
    }

    pub fn with(mut self, x: impl Into<String>, f: Formula) -> Self {
        self.insert(x, f);
        self
    }

    pub fn get(&self, x: &str) -> Option<&Formula> {
        self.0.get(x)
    }

    pub fn contains(&self, x: &str) -> bool {
        self.0.contains_key(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Formula)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The substitution that applies `self` first and then `then`.
    pub fn then(&self, then: &Substitution) -> Substitution {
        let mut out: BTreeMap<String, Formula> = self
            .0
            .iter()
            .map(|(x, f)| (x.clone(), f.apply_substitution(then)))
            .collect();
        for (x, f) in &then.0 {
            out.entry(x.clone()).or_insert_with(|| f.clone());
        }
        Substitution(out)
    }
}

impl FromIterator<(String, Formula)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (String, Formula)>>(iter: I) -> Self {
        Substitution(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bx(f: Formula) -> Formula {
        Formula::apply("Box", vec![f])
    }

    fn a() -> Formula {
        Formula::var("a")
    }

    #[test]
    fn classify_examples() {
        let k = Formula::imp(
            bx(Formula::imp(a(), Formula::var("b"))),
            Formula::imp(bx(a()), bx(Formula::var("b"))),
        );
        assert_eq!(k.classify(), Rank::Rank1);
        assert_eq!(Formula::imp(bx(a()), a()).classify(), Rank::NonIterative);
        assert_eq!(bx(bx(a())).classify(), Rank::Iterative);
        assert_eq!(bx(Formula::atom("p")).classify(), Rank::Iterative);
    }

    #[test]
    fn size_counts_distinct_subformulae() {
        assert_eq!(Formula::Bot.size(), 1);
        assert_eq!(Formula::imp(bx(a()), a()).size(), 3);
        assert_eq!(Formula::and(a(), a()).size(), 2);
    }

    #[test]
    fn closure_examples() {
        let p = Formula::atom("p");
        let np = Formula::neg(p.clone());
        assert_eq!(p.closure(), [p.clone(), np.clone()].into_iter().collect());
        let bp = bx(p.clone());
        let expected: BTreeSet<_> = [p.clone(), np.clone(), bp.clone(), Formula::neg(bp.clone())]
            .into_iter()
            .collect();
        assert_eq!(bp.closure(), expected);
        assert_eq!(np.closure(), [p, np.clone()].into_iter().collect());
    }

    #[test]
    fn substitution_basics() {
        let t = Formula::imp(bx(a()), a());
        let s = Substitution::new().with("a", Formula::atom("p"));
        assert_eq!(
            t.apply_substitution(&s),
            Formula::imp(bx(Formula::atom("p")), Formula::atom("p"))
        );
        assert_eq!(t.apply_substitution(&Substitution::new()), t);
    }

    #[test]
    fn composition_applies_left_first() {
        let s1 = Substitution::new().with("a", Formula::var("b"));
        let s2 = Substitution::new().with("b", Formula::Top);
        let f = Formula::and(a(), Formula::var("b"));
        assert_eq!(
            f.apply_substitution(&s1).apply_substitution(&s2),
            f.apply_substitution(&s1.then(&s2))
        );
    }

    #[test]
    fn variables_and_modalities() {
        let t = Formula::imp(bx(a()), a());
        assert_eq!(t.variables(), ["a".to_string()].into_iter().collect());
        assert_eq!(t.modalities(), [Modality::new("Box", 1)].into_iter().collect());
        assert!(Formula::Bot.variables().is_empty());
    }

    #[test]
    fn simplify_folds_constants() {
        let f = Formula::or(Formula::and(a(), Formula::Top), Formula::and(Formula::neg(a()), Formula::Bot));
        assert_eq!(f.simplify(), a());
        assert_eq!(Formula::neg(Formula::neg(a())).simplify(), a());
    }

    #[test]
    fn signature_rejects_conflicting_arity() {
        let mut sig = Signature::from_pairs([("Box", 1)]).unwrap();
        assert!(sig.declare("Box", 1).is_ok());
        assert!(matches!(sig.declare("Box", 2), Err(Error::ConflictingArity { .. })));
    }
}
