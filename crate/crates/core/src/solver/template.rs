//! Modular CDCL solver.
//!
//! The propagate/analyze/learn/backtrack engine is fixed. Nine heuristic
//! functions are kept in regions delimited by `// start <name>` and
//! `// end <name>` lines; each region holds exactly one free function with
//! the signature the engine expects for that slot, and may be replaced
//! independently of the others. Slot functions only see the solver through
//! the `Solver` passed to them.
//!
//! Variables are 0-based internally (`0..num_vars()`), literals are encoded
//! as `2 * var + sign` where `sign == 1` means negated.

use std::time::{Duration, Instant};

pub type Lit = u32;
pub type ClauseRef = usize;

/// Marker for "no reason clause" (decisions and level-0 units).
pub const NO_REASON: ClauseRef = usize::MAX;
/// Activity increment is divided by this after every conflict.
pub const VAR_DECAY: f64 = 0.95;
pub const CLAUSE_DECAY: f64 = 0.999;
/// Activities and increments are rescaled once any of them exceeds this.
pub const RESCALE_LIMIT: f64 = 1e100;
pub const LUBY_UNIT: u64 = 64;
pub const REDUCE_LIMIT_INIT: u64 = 8192;
pub const REDUCE_LIMIT_INC: u64 = 512;
pub const REPHASE_PERIOD: u64 = 4096;

const TIME_CHECK_PERIOD: u64 = 256;

#[inline]
pub fn lit_var(l: Lit) -> usize {
    (l >> 1) as usize
}

#[inline]
pub fn lit_is_neg(l: Lit) -> bool {
    l & 1 == 1
}

#[inline]
pub fn lit_not(l: Lit) -> Lit {
    l ^ 1
}

#[inline]
pub fn make_lit(var: usize, negated: bool) -> Lit {
    ((var as u32) << 1) | negated as u32
}

pub fn lit_from_dimacs(d: i32) -> Lit {
    make_lit(d.unsigned_abs() as usize - 1, d < 0)
}

pub fn lit_to_dimacs(l: Lit) -> i32 {
    let v = lit_var(l) as i32 + 1;
    if lit_is_neg(l) {
        -v
    } else {
        v
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverStats {
    /// Total number of conflicts.
    pub conflicts: u64,
    /// Conflicts since the last reduce round.
    pub reduces: u64,
    /// Current threshold on `reduces`.
    pub reduce_limit: u64,
    pub decisions: u64,
    pub restarts: u64,
    pub rephases: u64,
    pub propagations: u64,
    pub conflicts_since_restart: u64,
    /// Current threshold on `conflicts_since_restart`.
    pub restart_limit: u64,
    /// Position in the Luby sequence.
    pub luby_index: u64,
    /// `rephase_condition` fires once `conflicts` reaches this.
    pub rephase_limit: u64,
    pub var_inc: f64,
    /// Per-variable VSIDS score.
    pub activity: Vec<f64>,
}

impl SolverStats {
    fn new(num_vars: usize) -> Self {
        SolverStats {
            conflicts: 0,
            reduces: 0,
            reduce_limit: REDUCE_LIMIT_INIT,
            decisions: 0,
            restarts: 0,
            rephases: 0,
            propagations: 0,
            conflicts_since_restart: 0,
            restart_limit: LUBY_UNIT,
            luby_index: 0,
            rephase_limit: REPHASE_PERIOD,
            var_inc: 1.0,
            activity: vec![0.0; num_vars],
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClauseData {
    pub lits: Vec<Lit>,
    pub learnt: bool,
    pub activity: f64,
    /// Number of distinct decision levels at learn time.
    pub lbd: u32,
    pub deleted: bool,
}

#[derive(Clone, Copy, Debug)]
struct Watcher {
    clause: ClauseRef,
    blocker: Lit,
}

/// Max-heap of variables ordered by activity; ties go to the lower index.
#[derive(Clone, Debug, Default)]
pub struct VarOrder {
    heap: Vec<usize>,
    pos: Vec<usize>,
}

const NOT_IN_HEAP: usize = usize::MAX;

impl VarOrder {
    fn with_vars(n: usize) -> Self {
        VarOrder {
            heap: (0..n).collect(),
            pos: (0..n).collect(),
        }
    }

    #[inline]
    fn better(act: &[f64], a: usize, b: usize) -> bool {
        act[a] > act[b] || (act[a] == act[b] && a < b)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.pos[v] != NOT_IN_HEAP
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    pub fn insert(&mut self, v: usize, act: &[f64]) {
        if self.contains(v) {
            return;
        }
        self.pos[v] = self.heap.len();
        self.heap.push(v);
        self.sift_up(self.heap.len() - 1, act);
    }

    /// Restore heap order for `v` after its activity changed in either direction.
    pub fn update(&mut self, v: usize, act: &[f64]) {
        if !self.contains(v) {
            return;
        }
        let i = self.pos[v];
        self.sift_up(i, act);
        let i = self.pos[v];
        self.sift_down(i, act);
    }

    /// Rebuild the heap from scratch, e.g. after many activities changed.
    pub fn rebuild(&mut self, act: &[f64]) {
        let n = self.heap.len();
        for i in (0..n / 2).rev() {
            self.sift_down(i, act);
        }
    }

    pub fn pop(&mut self, act: &[f64]) -> Option<usize> {
        if self.heap.is_empty() {
            return None;
        }
        let top = self.heap[0];
        let last = self.heap.pop().unwrap();
        self.pos[top] = NOT_IN_HEAP;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.pos[last] = 0;
            self.sift_down(0, act);
        }
        Some(top)
    }

    fn sift_up(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        while i > 0 {
            let parent = (i - 1) / 2;
            let p = self.heap[parent];
            if !Self::better(act, v, p) {
                break;
            }
            self.heap[i] = p;
            self.pos[p] = i;
            i = parent;
        }
        self.heap[i] = v;
        self.pos[v] = i;
    }

    fn sift_down(&mut self, mut i: usize, act: &[f64]) {
        let n = self.heap.len();
        let v = self.heap[i];
        loop {
            let left = 2 * i + 1;
            if left >= n {
                break;
            }
            let right = left + 1;
            let child = if right < n && Self::better(act, self.heap[right], self.heap[left]) {
                right
            } else {
                left
            };
            let c = self.heap[child];
            if !Self::better(act, c, v) {
                break;
            }
            self.heap[i] = c;
            self.pos[c] = i;
            i = child;
        }
        self.heap[i] = v;
        self.pos[v] = i;
    }
}

/// One function pointer per heuristic slot.
#[derive(Clone, Copy)]
pub struct HeuristicHooks {
    pub restart: fn(&mut Solver),
    pub restart_condition: fn(&Solver) -> bool,
    pub restart_condition_update: fn(&mut Solver),
    pub reduce: fn(&mut Solver),
    pub reduce_condition: fn(&Solver) -> bool,
    pub rephase: fn(&mut Solver),
    pub rephase_condition: fn(&Solver) -> bool,
    pub bump_var: fn(&mut Solver, usize, f64),
    pub bump_var_heuristic: fn(&Solver, usize) -> f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Sat,
    Unsat,
    Unknown,
}

pub struct Solver {
    pub stats: SolverStats,
    pub clauses: Vec<ClauseData>,
    /// Live learned clauses.
    pub learnts: Vec<ClauseRef>,
    /// Last polarity each variable was assigned (`true` = positive).
    pub saved_phases: Vec<bool>,
    /// Polarities of the longest trail seen since the last rephase.
    pub best_phases: Vec<bool>,
    pub best_trail_len: usize,
    pub order: VarOrder,
    pub clause_inc: f64,
    num_vars: usize,
    values: Vec<i8>,
    levels: Vec<usize>,
    reasons: Vec<ClauseRef>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    watches: Vec<Vec<Watcher>>,
    seen: Vec<bool>,
    hooks: HeuristicHooks,
    rng_state: u64,
    /// An input clause already falsified at level 0.
    root_conflict: Option<ClauseRef>,
    started: Instant,
    time_limit: Option<Duration>,
    conflict_budget: Option<u64>,
}

impl Solver {
    /// Build a solver over `num_vars` variables from DIMACS-style clauses.
    /// Duplicate literals are dropped, tautologies are skipped.
    pub fn new(num_vars: usize, clauses: &[Vec<i32>], hooks: HeuristicHooks, seed: u64) -> Solver {
        let mut s = Solver {
            stats: SolverStats::new(num_vars),
            clauses: Vec::with_capacity(clauses.len()),
            learnts: Vec::new(),
            saved_phases: vec![false; num_vars],
            best_phases: vec![false; num_vars],
            best_trail_len: 0,
            order: VarOrder::with_vars(num_vars),
            clause_inc: 1.0,
            num_vars,
            values: vec![0; num_vars],
            levels: vec![0; num_vars],
            reasons: vec![NO_REASON; num_vars],
            trail: Vec::with_capacity(num_vars),
            trail_lim: Vec::new(),
            qhead: 0,
            watches: vec![Vec::new(); 2 * num_vars],
            seen: vec![false; num_vars],
            hooks,
            rng_state: seed ^ 0x9E37_79B9_7F4A_7C15,
            root_conflict: None,
            started: Instant::now(),
            time_limit: None,
            conflict_budget: None,
        };
        if s.rng_state == 0 {
            s.rng_state = 0x2545_F491_4F6C_DD1D;
        }
        for c in clauses {
            s.add_input_clause(c);
        }
        s
    }

    fn add_input_clause(&mut self, dimacs: &[i32]) {
        let mut lits: Vec<Lit> = Vec::with_capacity(dimacs.len());
        for &d in dimacs {
            let l = lit_from_dimacs(d);
            if lits.contains(&lit_not(l)) {
                return;
            }
            if !lits.contains(&l) {
                lits.push(l);
            }
        }
        let cref = self.clauses.len();
        let len = lits.len();
        let first = lits.first().copied();
        self.clauses.push(ClauseData {
            lits,
            learnt: false,
            activity: 0.0,
            lbd: 0,
            deleted: false,
        });
        match first {
            None => {
                self.root_conflict.get_or_insert(cref);
            }
            Some(l) if len == 1 => match self.lit_value(l) {
                -1 => {
                    self.root_conflict.get_or_insert(cref);
                }
                0 => self.enqueue(l, NO_REASON),
                _ => {}
            },
            Some(_) => self.attach(cref),
        }
    }

    pub fn set_time_limit(&mut self, limit: Duration) {
        self.started = Instant::now();
        self.time_limit = Some(limit);
    }

    pub fn set_conflict_budget(&mut self, budget: u64) {
        self.conflict_budget = Some(budget);
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn decision_level(&self) -> usize {
        self.trail_lim.len()
    }

    pub fn trail(&self) -> &[Lit] {
        &self.trail
    }

    /// 1 = true, -1 = false, 0 = unassigned.
    #[inline]
    pub fn lit_value(&self, l: Lit) -> i8 {
        let v = self.values[lit_var(l)];
        if lit_is_neg(l) {
            -v
        } else {
            v
        }
    }

    pub fn var_value(&self, var: usize) -> i8 {
        self.values[var]
    }

    pub fn var_level(&self, var: usize) -> usize {
        self.levels[var]
    }

    pub fn var_reason(&self, var: usize) -> Option<ClauseRef> {
        let r = self.reasons[var];
        (r != NO_REASON).then_some(r)
    }

    /// Pseudo-random 64-bit value (xorshift64*), deterministic per seed.
    pub fn next_random(&mut self) -> u64 {
        let mut x = self.rng_state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.rng_state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// A clause is locked while it is the reason of an assignment on the trail.
    pub fn is_locked(&self, cref: ClauseRef) -> bool {
        let c = &self.clauses[cref];
        if c.deleted || c.lits.is_empty() {
            return false;
        }
        let first = c.lits[0];
        self.lit_value(first) == 1 && self.reasons[lit_var(first)] == cref
    }

    /// Delete a learned clause. Original and locked clauses are kept;
    /// returns whether the clause was deleted.
    pub fn delete_clause(&mut self, cref: ClauseRef) -> bool {
        if !self.clauses[cref].learnt || self.clauses[cref].deleted || self.is_locked(cref) {
            return false;
        }
        let c = &mut self.clauses[cref];
        c.deleted = true;
        c.lits = Vec::new();
        true
    }

    fn attach(&mut self, cref: ClauseRef) {
        let c = &self.clauses[cref].lits;
        let (a, b) = (c[0], c[1]);
        self.watches[a as usize].push(Watcher { clause: cref, blocker: b });
        self.watches[b as usize].push(Watcher { clause: cref, blocker: a });
    }

    fn enqueue(&mut self, l: Lit, reason: ClauseRef) {
        let v = lit_var(l);
        self.values[v] = if lit_is_neg(l) { -1 } else { 1 };
        self.levels[v] = self.decision_level();
        self.reasons[v] = reason;
        self.trail.push(l);
    }

    /// Propagate all enqueued assignments to fixpoint. Returns the
    /// falsified clause on conflict.
    pub fn propagate(&mut self) -> Option<ClauseRef> {
        if self.decision_level() == 0 && self.root_conflict.is_some() {
            return self.root_conflict;
        }
        let mut conflict = None;
        while self.qhead < self.trail.len() && conflict.is_none() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = lit_not(p);
            let mut ws = std::mem::take(&mut self.watches[false_lit as usize]);
            let (mut i, mut j) = (0, 0);
            while i < ws.len() {
                let w = ws[i];
                i += 1;
                if self.lit_value(w.blocker) == 1 {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let cref = w.clause;
                if self.clauses[cref].deleted {
                    continue;
                }
                let values = &self.values;
                let value = |l: Lit| {
                    let v = values[lit_var(l)];
                    if lit_is_neg(l) {
                        -v
                    } else {
                        v
                    }
                };
                let lits = &mut self.clauses[cref].lits;
                if lits[0] == false_lit {
                    lits.swap(0, 1);
                }
                let first = lits[0];
                let nw = Watcher { clause: cref, blocker: first };
                if first != w.blocker && value(first) == 1 {
                    ws[j] = nw;
                    j += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..lits.len() {
                    if value(lits[k]) != -1 {
                        lits.swap(1, k);
                        self.watches[lits[1] as usize].push(nw);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = nw;
                j += 1;
                if value(first) == -1 {
                    conflict = Some(cref);
                    while i < ws.len() {
                        ws[j] = ws[i];
                        j += 1;
                        i += 1;
                    }
                    self.qhead = self.trail.len();
                } else {
                    self.enqueue(first, cref);
                }
            }
            ws.truncate(j);
            self.watches[false_lit as usize] = ws;
        }
        conflict
    }

    fn bump_clause(&mut self, cref: ClauseRef) {
        if !self.clauses[cref].learnt {
            return;
        }
        self.clauses[cref].activity += self.clause_inc;
        if self.clauses[cref].activity > RESCALE_LIMIT {
            for &l in &self.learnts {
                self.clauses[l].activity *= 1.0 / RESCALE_LIMIT;
            }
            self.clause_inc *= 1.0 / RESCALE_LIMIT;
        }
    }

    /// First-UIP conflict analysis. Returns the learned clause with the
    /// asserting literal first and a literal of the backtrack level second,
    /// plus the backtrack level. Every variable met during resolution is
    /// bumped through the `bump_var_heuristic` and `bump_var` slots.
    pub fn analyze(&mut self, conflict: ClauseRef) -> (Vec<Lit>, usize) {
        let hooks = self.hooks;
        let current = self.decision_level();
        let mut learnt: Vec<Lit> = vec![0];
        let mut to_clear: Vec<usize> = Vec::new();
        let mut pending = 0usize;
        let mut index = self.trail.len();
        let mut confl = conflict;
        let mut resolved: Option<Lit> = None;
        loop {
            self.bump_clause(confl);
            let skip = usize::from(resolved.is_some());
            let len = self.clauses[confl].lits.len();
            for k in skip..len {
                let q = self.clauses[confl].lits[k];
                let v = lit_var(q);
                if self.seen[v] || self.levels[v] == 0 {
                    continue;
                }
                self.seen[v] = true;
                to_clear.push(v);
                let coeff = (hooks.bump_var_heuristic)(self, v);
                (hooks.bump_var)(self, v, coeff);
                if self.levels[v] >= current {
                    pending += 1;
                } else {
                    learnt.push(q);
                }
            }
            loop {
                index -= 1;
                if self.seen[lit_var(self.trail[index])] {
                    break;
                }
            }
            let p = self.trail[index];
            resolved = Some(p);
            self.seen[lit_var(p)] = false;
            pending -= 1;
            if pending == 0 {
                break;
            }
            confl = self.reasons[lit_var(p)];
        }
        learnt[0] = lit_not(resolved.unwrap());

        // Drop literals implied by other literals of the clause.
        let mut kept = 1;
        for k in 1..learnt.len() {
            let l = learnt[k];
            let r = self.reasons[lit_var(l)];
            let redundant = r != NO_REASON
                && self.clauses[r].lits[1..]
                    .iter()
                    .all(|&o| self.seen[lit_var(o)] || self.levels[lit_var(o)] == 0);
            if !redundant {
                learnt[kept] = l;
                kept += 1;
            }
        }
        learnt.truncate(kept);
        for v in to_clear {
            self.seen[v] = false;
        }

        let mut bt_level = 0;
        if learnt.len() > 1 {
            let mut max_i = 1;
            for k in 2..learnt.len() {
                if self.levels[lit_var(learnt[k])] > self.levels[lit_var(learnt[max_i])] {
                    max_i = k;
                }
            }
            learnt.swap(1, max_i);
            bt_level = self.levels[lit_var(learnt[1])];
        }
        (learnt, bt_level)
    }

    /// Undo all assignments above `level`, saving their phases. No-op when
    /// `level` is not below the current decision level.
    pub fn cancel_until(&mut self, level: usize) {
        if level >= self.decision_level() {
            return;
        }
        let start = self.trail_lim[level];
        for k in (start..self.trail.len()).rev() {
            let l = self.trail[k];
            let v = lit_var(l);
            self.saved_phases[v] = !lit_is_neg(l);
            self.values[v] = 0;
            self.reasons[v] = NO_REASON;
            self.order.insert(v, &self.stats.activity);
        }
        self.trail.truncate(start);
        self.trail_lim.truncate(level);
        self.qhead = start;
    }

    /// Backtrack with the precondition checked.
    pub fn try_backtrack(&mut self, level: usize) -> Result<(), String> {
        if level >= self.decision_level() {
            return Err(format!(
                "cannot backtrack to level {level} from level {}",
                self.decision_level()
            ));
        }
        self.cancel_until(level);
        Ok(())
    }

    /// Open a new decision level on the most active unassigned variable,
    /// using its saved phase. Returns `None` once every variable is assigned.
    pub fn decide(&mut self) -> Option<Lit> {
        loop {
            let v = self.order.pop(&self.stats.activity)?;
            if self.values[v] == 0 {
                let l = make_lit(v, !self.saved_phases[v]);
                self.trail_lim.push(self.trail.len());
                self.stats.decisions += 1;
                self.enqueue(l, NO_REASON);
                return Some(l);
            }
        }
    }

    fn learn(&mut self, lits: Vec<Lit>) {
        if lits.len() == 1 {
            self.enqueue(lits[0], NO_REASON);
            return;
        }
        let mut levels: Vec<usize> = lits.iter().map(|&l| self.levels[lit_var(l)]).collect();
        levels.sort_unstable();
        levels.dedup();
        let cref = self.clauses.len();
        let asserting = lits[0];
        self.clauses.push(ClauseData {
            lits,
            learnt: true,
            activity: 0.0,
            lbd: levels.len() as u32,
            deleted: false,
        });
        self.bump_clause(cref);
        self.learnts.push(cref);
        self.attach(cref);
        self.enqueue(asserting, cref);
    }

    fn decay_activities(&mut self) {
        self.stats.var_inc *= 1.0 / VAR_DECAY;
        if self.stats.var_inc > RESCALE_LIMIT {
            for a in self.stats.activity.iter_mut() {
                *a *= 1.0 / RESCALE_LIMIT;
            }
            self.stats.var_inc *= 1.0 / RESCALE_LIMIT;
        }
        self.clause_inc *= 1.0 / CLAUSE_DECAY;
    }

    fn track_best_phases(&mut self) {
        if self.trail.len() > self.best_trail_len {
            self.best_trail_len = self.trail.len();
            for &l in &self.trail {
                self.best_phases[lit_var(l)] = !lit_is_neg(l);
            }
        }
    }

    fn out_of_time(&self) -> bool {
        matches!(self.time_limit, Some(t) if self.started.elapsed() >= t)
    }

    pub fn solve(&mut self) -> Status {
        if self.root_conflict.is_some() {
            return Status::Unsat;
        }
        let hooks = self.hooks;
        loop {
            if let Some(confl) = self.propagate() {
                if self.decision_level() == 0 {
                    return Status::Unsat;
                }
                self.track_best_phases();
                let (learnt, bt_level) = self.analyze(confl);
                self.cancel_until(bt_level);
                self.learn(learnt);
                self.stats.conflicts += 1;
                self.stats.reduces += 1;
                self.stats.conflicts_since_restart += 1;
                self.decay_activities();
                if matches!(self.conflict_budget, Some(b) if self.stats.conflicts >= b) {
                    return Status::Unknown;
                }
                if self.stats.conflicts % TIME_CHECK_PERIOD == 0 && self.out_of_time() {
                    return Status::Unknown;
                }
            } else {
                if (hooks.restart_condition)(self) {
                    (hooks.restart)(self);
                    (hooks.restart_condition_update)(self);
                    if self.out_of_time() {
                        return Status::Unknown;
                    }
                    continue;
                }
                if (hooks.reduce_condition)(self) {
                    (hooks.reduce)(self);
                    let clauses = &self.clauses;
                    self.learnts.retain(|&c| !clauses[c].deleted);
                }
                if (hooks.rephase_condition)(self) {
                    (hooks.rephase)(self);
                }
                if self.decide().is_none() {
                    return Status::Sat;
                }
            }
        }
    }

    /// Current assignment as DIMACS literals; unassigned variables are
    /// reported negative.
    pub fn model(&self) -> Vec<i32> {
        (0..self.num_vars)
            .map(|v| {
                let d = v as i32 + 1;
                if self.values[v] == 1 {
                    d
                } else {
                    -d
                }
            })
            .collect()
    }
}

// start restart
fn restart(s: &mut Solver) {
    s.stats.restarts += 1;
    s.stats.conflicts_since_restart = 0;
    s.cancel_until(0);
}
// end restart

// start restart_condition
fn restart_condition(s: &Solver) -> bool {
    s.stats.conflicts_since_restart >= s.stats.restart_limit
}
// end restart_condition

// start restart_condition_update
fn restart_condition_update(s: &mut Solver) {
    s.stats.luby_index += 1;
    let mut x = s.stats.luby_index;
    let mut size: u64 = 1;
    let mut seq: u32 = 0;
    while size < x + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != x {
        size = (size - 1) >> 1;
        seq -= 1;
        x %= size;
    }
    s.stats.restart_limit = LUBY_UNIT << seq;
}
// end restart_condition_update

// start reduce
fn reduce(s: &mut Solver) {
    s.stats.reduces = 0;
    s.stats.reduce_limit += REDUCE_LIMIT_INC;
    let mut candidates: Vec<ClauseRef> = s
        .learnts
        .iter()
        .copied()
        .filter(|&c| !s.is_locked(c))
        .collect();
    candidates.sort_by(|&a, &b| {
        s.clauses[a]
            .activity
            .partial_cmp(&s.clauses[b].activity)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    let half = s.learnts.len() / 2;
    for &c in candidates.iter().take(half) {
        s.delete_clause(c);
    }
}
// end reduce

// start reduce_condition
fn reduce_condition(s: &Solver) -> bool {
    s.stats.reduces >= s.stats.reduce_limit && s.stats.conflicts % 100 == 0
}
// end reduce_condition

// start rephase
fn rephase(s: &mut Solver) {
    s.stats.rephases += 1;
    s.stats.rephase_limit = s.stats.conflicts + REPHASE_PERIOD;
    s.saved_phases.clone_from(&s.best_phases);
    s.best_trail_len = 0;
}
// end rephase

// start rephase_condition
fn rephase_condition(s: &Solver) -> bool {
    s.stats.conflicts >= s.stats.rephase_limit
}
// end rephase_condition

// start bump_var
fn bump_var(s: &mut Solver, var: usize, coeff: f64) {
    s.stats.activity[var] += s.stats.var_inc * coeff;
    if s.stats.activity[var] > RESCALE_LIMIT {
        for a in s.stats.activity.iter_mut() {
            *a *= 1.0 / RESCALE_LIMIT;
        }
        s.stats.var_inc *= 1.0 / RESCALE_LIMIT;
    }
    s.order.update(var, &s.stats.activity);
}
// end bump_var

// start bump_var_heuristic
fn bump_var_heuristic(_s: &Solver, _var: usize) -> f64 {
    1.0
}
// end bump_var_heuristic

/// The hook binding made of the functions currently in the slot regions.
pub fn active_hooks() -> HeuristicHooks {
    HeuristicHooks {
        restart,
        restart_condition,
        restart_condition_update,
        reduce,
        reduce_condition,
        rephase,
        rephase_condition,
        bump_var,
        bump_var_heuristic,
    }
}
