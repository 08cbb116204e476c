//! A small DPLL solver with watched literals and chronological
//! backtracking, plus a CNF encoder for negation-normal-form expressions.
//!
//! Branching picks the lowest unassigned variable and tries `false` first,
//! so results are deterministic.

use crate::error::{Error, Result};

/// Boolean expression in negation normal form over numbered variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Expr {
    Const(bool),
    Lit(usize, bool),
    And(Vec<Expr>),
    Or(Vec<Expr>),
}

impl Expr {
    pub(crate) fn not(self) -> Expr {
        match self {
            Expr::Const(b) => Expr::Const(!b),
            Expr::Lit(v, s) => Expr::Lit(v, !s),
            Expr::And(xs) => Expr::Or(xs.into_iter().map(Expr::not).collect()),
            Expr::Or(xs) => Expr::And(xs.into_iter().map(Expr::not).collect()),
        }
    }

    pub(crate) fn and(xs: Vec<Expr>) -> Expr {
        let mut out = Vec::with_capacity(xs.len());
        for x in xs {
            match x {
                Expr::Const(true) => {}
                Expr::Const(false) => return Expr::Const(false),
                Expr::And(ys) => out.extend(ys),
                x => out.push(x),
            }
        }
        match out.len() {
            0 => Expr::Const(true),
            1 => out.pop().unwrap(),
            _ => Expr::And(out),
        }
    }

    pub(crate) fn or(xs: Vec<Expr>) -> Expr {
        Expr::and(xs.into_iter().map(Expr::not).collect()).not()
    }

    pub(crate) fn imp(a: Expr, b: Expr) -> Expr {
        Expr::or(vec![a.not(), b])
    }

    pub(crate) fn iff(a: Expr, b: Expr) -> Expr {
        Expr::and(vec![Expr::imp(a.clone(), b.clone()), Expr::imp(b, a)])
    }

    pub(crate) fn eval(&self, v: &[bool]) -> bool {
        match self {
            Expr::Const(b) => *b,
            Expr::Lit(x, s) => v[*x] == *s,
            Expr::And(xs) => xs.iter().all(|x| x.eval(v)),
            Expr::Or(xs) => xs.iter().any(|x| x.eval(v)),
        }
    }
}

/// Literal: `2 * var + negated`.
type Lit = u32;

fn lit(v: usize, positive: bool) -> Lit {
    (2 * v + usize::from(!positive)) as Lit
}

fn var(l: Lit) -> usize {
    (l >> 1) as usize
}

/// Clause database under construction. Variables `0..primary` belong to the
/// caller; auxiliary variables are allocated above them.
#[derive(Clone, Debug)]
pub(crate) struct Cnf {
    primary: usize,
    nvars: usize,
    clauses: Vec<Vec<Lit>>,
    unsat: bool,
}

const DISTRIBUTE_CAP: usize = 16;

impl Cnf {
    pub(crate) fn new(primary: usize) -> Cnf {
        Cnf {
            primary,
            nvars: primary,
            clauses: Vec::new(),
            unsat: false,
        }
    }

    fn fresh(&mut self) -> usize {
        self.nvars += 1;
        self.nvars - 1
    }

    /// Asserts `e`. Satisfiability is preserved; auxiliary variables only
    /// appear positively implied, so any model restricted to the primary
    /// variables satisfies `e`.
    pub(crate) fn assert(&mut self, e: Expr) {
        for c in self.clauses_of(e) {
            self.push_clause(c);
        }
    }

    fn push_clause(&mut self, mut c: Vec<Lit>) {
        c.sort_unstable();
        c.dedup();
        if c.windows(2).any(|w| var(w[0]) == var(w[1])) {
            return;
        }
        if c.is_empty() {
            self.unsat = true;
        }
        self.clauses.push(c);
    }

    fn clauses_of(&mut self, e: Expr) -> Vec<Vec<Lit>> {
        match e {
            Expr::Const(true) => vec![],
            Expr::Const(false) => vec![vec![]],
            Expr::Lit(v, s) => vec![vec![lit(v, s)]],
            Expr::And(xs) => xs.into_iter().flat_map(|x| self.clauses_of(x)).collect(),
            Expr::Or(xs) => {
                let mut acc: Vec<Vec<Lit>> = vec![vec![]];
                for x in xs {
                    let mut cs = self.clauses_of(x);
                    if cs.is_empty() {
                        return vec![];
                    }
                    if cs.len() > 1 && acc.len() * cs.len() > DISTRIBUTE_CAP {
                        let t = self.fresh();
                        for mut c in cs {
                            c.push(lit(t, false));
                            self.push_clause(c);
                        }
                        cs = vec![vec![lit(t, true)]];
                    }
                    acc = acc
                        .iter()
                        .flat_map(|a| {
                            cs.iter().map(move |c| {
                                let mut n = a.clone();
                                n.extend_from_slice(c);
                                n
                            })
                        })
                        .collect();
                }
                acc
            }
        }
    }

    /// Finds a model of the clauses, returning the values of the primary
    /// variables. Gives up with a resource error after `max_decisions`
    /// branching steps.
    pub(crate) fn solve(&self, max_decisions: u64) -> Result<Option<Vec<bool>>> {
        self.prepare().solve_under(&[], max_decisions)
    }

    /// Builds the watch lists and propagates the unit clauses once, for
    /// repeated solving under different assumptions.
    pub(crate) fn prepare(&self) -> Prepared {
        let mut dpll = Dpll::new(self.nvars, &self.clauses);
        let empty = self.clauses.iter().any(|c| c.is_empty());
        let root = (!self.unsat && !empty && dpll.root_propagate()).then_some(dpll.trail.len());
        Prepared {
            dpll,
            primary: self.primary,
            root,
        }
    }
}

/// A clause database ready for incremental use.
pub(crate) struct Prepared {
    dpll: Dpll,
    primary: usize,
    /// Trail length after root propagation; `None` if the clauses alone
    /// are contradictory.
    root: Option<usize>,
}

impl Prepared {
    /// Solves with the literals `(var, value)` temporarily asserted.
    pub(crate) fn solve_under(&mut self, assumptions: &[(usize, bool)], max_decisions: u64) -> Result<Option<Vec<bool>>> {
        let Some(root) = self.root else {
            return Ok(None);
        };
        let s = &mut self.dpll;
        s.decisions.clear();
        s.undo_to(root);
        let mut ok = true;
        for &(v, b) in assumptions {
            let l = lit(v, b);
            match s.value(l) {
                0 => {
                    ok = false;
                    break;
                }
                -1 => s.set(l),
                _ => {}
            }
        }
        let found = match ok && s.propagate() {
            true => s.search(max_decisions),
            false => Ok(false),
        };
        let out = found.map(|f| f.then(|| s.assign[..self.primary].iter().map(|&a| a == 1).collect()));
        s.decisions.clear();
        s.undo_to(root);
        out
    }
}

struct Dpll {
    clauses: Vec<Vec<Lit>>,
    watches: Vec<Vec<usize>>,
    assign: Vec<i8>,
    trail: Vec<Lit>,
    qhead: usize,
    /// (trail length before the decision, decision literal, already flipped)
    decisions: Vec<(usize, Lit, bool)>,
    units: Vec<Lit>,
}

impl Dpll {
    fn new(nvars: usize, clauses: &[Vec<Lit>]) -> Dpll {
        let mut s = Dpll {
            clauses: Vec::new(),
            watches: vec![Vec::new(); 2 * nvars],
            assign: vec![-1; nvars],
            trail: Vec::new(),
            qhead: 0,
            decisions: Vec::new(),
            units: Vec::new(),
        };
        for c in clauses.iter().filter(|c| !c.is_empty()) {
            if c.len() == 1 {
                s.units.push(c[0]);
            } else {
                let idx = s.clauses.len();
                s.watches[c[0] as usize].push(idx);
                s.watches[c[1] as usize].push(idx);
                s.clauses.push(c.clone());
            }
        }
        s
    }

    fn value(&self, l: Lit) -> i8 {
        match self.assign[var(l)] {
            -1 => -1,
            a => a ^ (l & 1) as i8,
        }
    }

    fn set(&mut self, l: Lit) {
        self.assign[var(l)] = 1 ^ (l & 1) as i8;
        self.trail.push(l);
    }

    /// Returns false on conflict.
    fn propagate(&mut self) -> bool {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            let falsified = p ^ 1;
            let mut ws = std::mem::take(&mut self.watches[falsified as usize]);
            let mut i = 0;
            let mut conflict = false;
            while i < ws.len() {
                let ci = ws[i];
                let c = &mut self.clauses[ci];
                if c[0] == falsified {
                    c.swap(0, 1);
                }
                let first = c[0];
                let first_val = match self.assign[var(first)] {
                    -1 => -1,
                    a => a ^ (first & 1) as i8,
                };
                if first_val == 1 {
                    i += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..c.len() {
                    let l = c[k];
                    let lv = match self.assign[var(l)] {
                        -1 => -1,
                        a => a ^ (l & 1) as i8,
                    };
                    if lv != 0 {
                        c.swap(1, k);
                        self.watches[c[1] as usize].push(ci);
                        ws.swap_remove(i);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                if first_val == 0 {
                    conflict = true;
                    break;
                }
                self.set(first);
                i += 1;
            }
            self.watches[falsified as usize].extend(ws);
            if conflict {
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, len: usize) {
        for &l in &self.trail[len..] {
            self.assign[var(l)] = -1;
        }
        self.trail.truncate(len);
        self.qhead = len;
    }

    /// Asserts the unit clauses and propagates; false on conflict.
    fn root_propagate(&mut self) -> bool {
        for l in std::mem::take(&mut self.units) {
            match self.value(l) {
                0 => return false,
                -1 => self.set(l),
                _ => {}
            }
        }
        self.propagate()
    }

    /// Chronological backtracking search from a conflict-free trail.
    fn search(&mut self, max_decisions: u64) -> Result<bool> {
        let mut ok = true;
        let mut next_var = 0;
        let mut steps = 0u64;
        loop {
            if !ok {
                loop {
                    let Some((len, l, flipped)) = self.decisions.pop() else {
                        return Ok(false);
                    };
                    if flipped {
                        continue;
                    }
                    self.undo_to(len);
                    self.decisions.push((len, l ^ 1, true));
                    self.set(l ^ 1);
                    next_var = var(l);
                    break;
                }
                ok = self.propagate();
                continue;
            }
            while next_var < self.assign.len() && self.assign[next_var] != -1 {
                next_var += 1;
            }
            if next_var == self.assign.len() {
                return Ok(true);
            }
            steps += 1;
            if steps > max_decisions {
                return Err(Error::Resource(format!(
                    "propositional search exceeded {max_decisions} decisions"
                )));
            }
            let l = lit(next_var, false);
            self.decisions.push((self.trail.len(), l, false));
            self.set(l);
            ok = self.propagate();
        }
    }
}
