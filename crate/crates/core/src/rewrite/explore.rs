//! Exhaustive (budgeted) exploration of the reduction graph: the diamond
//! checker, breadth-first normalization and length invariance.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use super::{redexes, RewriteError, Step, Strategy};
use crate::syntax::{canon, Term};

/// Two distinct one-step reducts of `source` with no common one-step reduct.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Peak {
    pub source: Term,
    pub left: Step,
    pub right: Step,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiamondReport {
    /// Pairs of α-distinct reducts examined.
    pub peaks: usize,
    pub violation: Option<Peak>,
}

pub fn diamond_check(t: &Term, s: Strategy) -> Result<DiamondReport, RewriteError> {
    let mut reps: Vec<(Term, Step)> = Vec::new();
    for st in redexes(t, s)? {
        let key = canon(&st.reduct);
        if !reps.iter().any(|(k, _)| *k == key) {
            reps.push((key, st));
        }
    }
    let mut next: Vec<BTreeSet<Term>> = Vec::with_capacity(reps.len());
    for (_, st) in &reps {
        next.push(redexes(&st.reduct, s)?.iter().map(|r| canon(&r.reduct)).collect());
    }
    let mut peaks = 0;
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            peaks += 1;
            if next[i].is_disjoint(&next[j]) {
                return Ok(DiamondReport {
                    peaks,
                    violation: Some(Peak {
                        source: t.clone(),
                        left: reps[i].1.clone(),
                        right: reps[j].1.clone(),
                    }),
                });
            }
        }
    }
    Ok(DiamondReport {
        peaks,
        violation: None,
    })
}

/// The reachable part of the reduction graph, α-canonical nodes in BFS
/// order. `complete` is false when the node budget cut the search short.
#[derive(Clone, Debug)]
pub struct Exploration {
    pub nodes: Vec<Term>,
    pub succ: Vec<Vec<usize>>,
    pub normal: Vec<usize>,
    pub complete: bool,
}

impl Exploration {
    pub fn normal_forms(&self) -> Vec<&Term> {
        self.normal.iter().map(|&i| &self.nodes[i]).collect()
    }
}

pub fn explore(t: &Term, s: Strategy, node_budget: usize) -> Result<Exploration, RewriteError> {
    let mut index: HashMap<Term, usize> = HashMap::new();
    let mut nodes = vec![canon(t)];
    index.insert(nodes[0].clone(), 0);
    let mut succ: Vec<Vec<usize>> = vec![Vec::new()];
    let mut normal = Vec::new();
    let mut complete = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(n) = queue.pop_front() {
        let steps = redexes(&nodes[n], s)?;
        if steps.is_empty() {
            normal.push(n);
            continue;
        }
        let mut out = Vec::new();
        for st in steps {
            let key = canon(&st.reduct);
            let m = match index.get(&key) {
                Some(&m) => m,
                None if nodes.len() < node_budget.max(1) => {
                    let m = nodes.len();
                    index.insert(key.clone(), m);
                    nodes.push(key);
                    succ.push(Vec::new());
                    queue.push_back(m);
                    m
                }
                None => {
                    complete = false;
                    continue;
                }
            };
            if !out.contains(&m) {
                out.push(m);
            }
        }
        succ[n] = out;
    }
    Ok(Exploration {
        nodes,
        succ,
        normal,
        complete,
    })
}

/// A normal form reachable within the budget (the first in BFS order).
pub fn bfs_normalize(t: &Term, s: Strategy, node_budget: usize) -> Result<Option<Term>, RewriteError> {
    let ex = explore(t, s, node_budget)?;
    Ok(ex.normal.first().map(|&i| ex.nodes[i].clone()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum LengthReport {
    /// Budget ran out before the graph was fully explored.
    Undecided,
    NoNormalForm,
    /// Every path to each normal form has the same length.
    Invariant { lengths: Vec<(Term, usize)> },
    Violation { detail: String },
}

/// Checks that all evaluations from `t` to the same normal form have the
/// same length. A graph that reaches a normal form and also contains a
/// cycle counts as a violation: the start term would then have evaluations
/// of unbounded length.
pub fn length_invariance(t: &Term, s: Strategy, node_budget: usize) -> Result<LengthReport, RewriteError> {
    let ex = explore(t, s, node_budget)?;
    if !ex.complete {
        return Ok(LengthReport::Undecided);
    }
    if ex.normal.is_empty() {
        return Ok(LengthReport::NoNormalForm);
    }

    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Fresh,
        Active,
        Done,
    }
    type Lens = BTreeMap<usize, BTreeSet<usize>>;

    fn go(n: usize, ex: &Exploration, mark: &mut [Mark], memo: &mut [Lens]) -> Result<(), usize> {
        mark[n] = Mark::Active;
        let mut lens = Lens::new();
        if ex.succ[n].is_empty() {
            lens.insert(n, BTreeSet::from([0]));
        }
        for &m in &ex.succ[n] {
            match mark[m] {
                Mark::Active => return Err(m),
                Mark::Fresh => go(m, ex, mark, memo)?,
                Mark::Done => {}
            }
            for (nf, ls) in &memo[m] {
                lens.entry(*nf).or_default().extend(ls.iter().map(|l| l + 1));
            }
        }
        memo[n] = lens;
        mark[n] = Mark::Done;
        Ok(())
    }

    let mut mark = vec![Mark::Fresh; ex.nodes.len()];
    let mut memo = vec![Lens::new(); ex.nodes.len()];
    if let Err(m) = go(0, &ex, &mut mark, &mut memo) {
        return Ok(LengthReport::Violation {
            detail: format!("normal form reachable, but {} lies on a cycle", ex.nodes[m]),
        });
    }
    let mut lengths = Vec::new();
    for (nf, ls) in &memo[0] {
        if ls.len() != 1 {
            return Ok(LengthReport::Violation {
                detail: format!("evaluations of lengths {ls:?} all end in {}", ex.nodes[*nf]),
            });
        }
        lengths.push((ex.nodes[*nf].clone(), *ls.first().unwrap()));
    }
    Ok(LengthReport::Invariant { lengths })
}
