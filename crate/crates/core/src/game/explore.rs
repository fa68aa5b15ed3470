use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::Instant;

use super::config::{Config, Move, TraceLine};
use super::step::Step;
use super::Game;

/// Counters gathered while exploring. In parallel runs `traces` and `moves`
/// are summed and the maxima are taken across workers.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Stats {
    /// Complete traces: leaves, dead ends and the violating trace.
    pub traces: u64,
    pub moves: u64,
    /// Distinct first transactions the Opponent tried.
    pub first_level_calls: u64,
    pub deployments: u64,
    pub max_calls_per_function: u32,
    pub max_open_calls: u32,
    pub max_waits: u32,
    pub max_total_wait: u64,
}

impl Stats {
    #[cfg(feature = "parallel")]
    fn merge(&mut self, o: &Stats) {
        self.traces += o.traces;
        self.moves += o.moves;
        self.first_level_calls += o.first_level_calls;
        self.deployments += o.deployments;
        self.max_calls_per_function = self.max_calls_per_function.max(o.max_calls_per_function);
        self.max_open_calls = self.max_open_calls.max(o.max_open_calls);
        self.max_waits = self.max_waits.max(o.max_waits);
        self.max_total_wait = self.max_total_wait.max(o.max_total_wait);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub message: String,
    /// Recorded moves up to, not including, the failing one.
    pub lines: Vec<TraceLine>,
    /// Every move from the initial configuration, including the failing one.
    pub moves: Vec<Move>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Violation(Box<Violation>),
    Exhausted,
    TimedOut,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub verdict: Verdict,
    pub stats: Stats,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ExploreOptions {
    /// Worker threads; 0 uses every core, 1 explores sequentially.
    pub jobs: usize,
    pub deadline: Option<Instant>,
}

enum Flow {
    Done,
    Found(Box<Violation>),
    Stopped,
}

/// Stop conditions shared down the search tree. A parallel branch is
/// cancelled once a sibling to its left has found a violation, so the
/// reported violation is always the one a sequential search finds first.
struct Search<'a> {
    deadline: Option<Instant>,
    timed_out: &'a AtomicBool,
    cancel: Option<(&'a AtomicUsize, usize)>,
    parent: Option<&'a Search<'a>>,
}

impl Search<'_> {
    fn stop(&self) -> bool {
        if self.timed_out.load(Ordering::Relaxed) {
            return true;
        }
        if let Some(d) = self.deadline {
            if Instant::now() >= d {
                self.timed_out.store(true, Ordering::Relaxed);
                return true;
            }
        }
        if let Some((best, me)) = self.cancel {
            if best.load(Ordering::Relaxed) < me {
                return true;
            }
        }
        self.parent.is_some_and(|p| p.stop())
    }
}

/// How many levels of branch points fan out across threads.
#[cfg(feature = "parallel")]
const PAR_DEPTH: u32 = 2;

impl Game {
    /// Explores every trace within the bounds, depth first, stopping at the
    /// first violation.
    pub fn explore(&self, start: Config, opts: ExploreOptions) -> Report {
        let timed_out = AtomicBool::new(false);
        let search = Search {
            deadline: opts.deadline,
            timed_out: &timed_out,
            cancel: None,
            parent: None,
        };
        let mut stats = Stats::default();
        let flow = self.dispatch(start, &search, opts.jobs, &mut stats);
        let verdict = match flow {
            Flow::Found(v) => Verdict::Violation(v),
            Flow::Done => Verdict::Exhausted,
            Flow::Stopped => Verdict::TimedOut,
        };
        Report { verdict, stats }
    }

    #[cfg(feature = "parallel")]
    fn dispatch(&self, start: Config, s: &Search<'_>, jobs: usize, stats: &mut Stats) -> Flow {
        if jobs == 1 {
            return self.dfs(start, s, stats);
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| self.par_dfs(start, s, 0, stats))
    }

    #[cfg(not(feature = "parallel"))]
    fn dispatch(&self, start: Config, s: &Search<'_>, _jobs: usize, stats: &mut Stats) -> Flow {
        self.dfs(start, s, stats)
    }

    /// Applies `mv` to `cfg`; `None` means keep going from `cfg`.
    fn step(&self, cfg: &mut Config, mv: &Move, s: &Search<'_>, stats: &mut Stats) -> Option<Flow> {
        match self.apply(cfg, mv, stats, &|| s.stop()) {
            Step::Continue => {
                if *mv == Move::Deploy {
                    stats.deployments += 1;
                }
                None
            }
            Step::Dead => {
                stats.traces += 1;
                Some(Flow::Done)
            }
            Step::Violation(message) => {
                stats.traces += 1;
                let mut moves = cfg.moves();
                moves.push(mv.clone());
                Some(Flow::Found(Box::new(Violation {
                    message,
                    lines: cfg.lines(),
                    moves,
                })))
            }
            Step::Interrupted => Some(Flow::Stopped),
        }
    }

    /// Follows forced moves until the next branch point. Returns the moves
    /// there, or how the trace ended.
    fn advance(
        &self,
        cfg: &mut Config,
        s: &Search<'_>,
        stats: &mut Stats,
    ) -> Result<Vec<Move>, Flow> {
        loop {
            if s.stop() {
                return Err(Flow::Stopped);
            }
            let mut moves = self.moves(cfg);
            match moves.len() {
                0 => {
                    stats.traces += 1;
                    return Err(Flow::Done);
                }
                1 => {
                    let mv = moves.pop().expect("one move");
                    if let Some(f) = self.step(cfg, &mv, s, stats) {
                        return Err(f);
                    }
                }
                _ => return Ok(moves),
            }
        }
    }

    fn dfs(&self, mut cfg: Config, s: &Search<'_>, stats: &mut Stats) -> Flow {
        let moves = match self.advance(&mut cfg, s, stats) {
            Ok(m) => m,
            Err(f) => return f,
        };
        let last = moves.len() - 1;
        let mut spare = Some(cfg);
        for (i, mv) in moves.iter().enumerate() {
            let mut c = if i == last {
                spare.take().expect("kept for the last move")
            } else {
                spare.as_ref().expect("kept for the last move").clone()
            };
            let flow = match self.step(&mut c, mv, s, stats) {
                None => self.dfs(c, s, stats),
                Some(f) => f,
            };
            match flow {
                Flow::Done => {}
                other => return other,
            }
        }
        Flow::Done
    }

    #[cfg(feature = "parallel")]
    fn par_dfs(&self, mut cfg: Config, s: &Search<'_>, depth: u32, stats: &mut Stats) -> Flow {
        use rayon::prelude::*;

        let moves = match self.advance(&mut cfg, s, stats) {
            Ok(m) => m,
            Err(f) => return f,
        };
        let best = AtomicUsize::new(usize::MAX);
        let results: Vec<(Flow, Stats)> = moves
            .par_iter()
            .enumerate()
            .map(|(i, mv)| {
                let child = Search {
                    deadline: s.deadline,
                    timed_out: s.timed_out,
                    cancel: Some((&best, i)),
                    parent: Some(s),
                };
                let mut st = Stats::default();
                if child.stop() {
                    return (Flow::Stopped, st);
                }
                let mut c = cfg.clone();
                let flow = match self.step(&mut c, mv, &child, &mut st) {
                    None if depth + 1 < PAR_DEPTH => self.par_dfs(c, &child, depth + 1, &mut st),
                    None => self.dfs(c, &child, &mut st),
                    Some(f) => f,
                };
                if matches!(flow, Flow::Found(_)) {
                    best.fetch_min(i, Ordering::Relaxed);
                }
                (flow, st)
            })
            .collect();
        let mut outcome = Flow::Done;
        for (flow, st) in results {
            stats.merge(&st);
            match (&outcome, flow) {
                (Flow::Found(_), _) => {}
                (_, Flow::Found(v)) => outcome = Flow::Found(v),
                (Flow::Done, Flow::Stopped) => outcome = Flow::Stopped,
                _ => {}
            }
        }
        outcome
    }
}
