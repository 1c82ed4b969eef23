use std::time::{Duration, Instant};

/// Resource limit for exhaustive searches.
///
/// A budget is a description; [`Budget::start`] turns it into running
/// [`Limits`] that several searches can share.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub time: Option<Duration>,
    pub nodes: Option<u64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn millis(ms: u64) -> Self {
        Budget { time: Some(Duration::from_millis(ms)), nodes: None }
    }

    pub fn nodes(n: u64) -> Self {
        Budget { time: None, nodes: Some(n) }
    }

    pub fn start(&self) -> Limits {
        Limits {
            deadline: self.time.map(|d| Instant::now() + d),
            nodes_left: self.nodes,
            exhausted: false,
        }
    }
}

/// Running limits. Once exhausted they stay exhausted.
#[derive(Debug, Clone)]
pub struct Limits {
    deadline: Option<Instant>,
    nodes_left: Option<u64>,
    exhausted: bool,
}

impl Limits {
    pub fn unlimited() -> Self {
        Budget::unlimited().start()
    }

    /// Charges one search node; returns `false` when the budget is gone.
    pub fn tick(&mut self, node: u64) -> bool {
        if self.exhausted {
            return false;
        }
        if let Some(n) = self.nodes_left.as_mut() {
            if *n == 0 {
                self.exhausted = true;
                return false;
            }
            *n -= 1;
        }
        if node % 256 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.exhausted = true;
                    return false;
                }
            }
        }
        true
    }

    pub fn is_exhausted(&self) -> bool {
        self.exhausted
    }
}
