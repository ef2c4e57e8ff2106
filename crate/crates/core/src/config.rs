/// Scan caps and budgets shared by every exhaustive procedure.
///
/// All limits are counted in elements, never in seconds, so that a run is
/// reproducible on any machine.
#[derive(Debug, Clone)]
pub struct Config {
    /// Largest ring order accepted by the spec parser.
    pub order_cap: u64,
    /// Largest ring a ring-level predicate will scan.
    pub scan_cap: u64,
    /// Largest ring whose ideal lattice is enumerated.
    pub ideal_cap: u64,
    /// Largest ring checked by the cubic axiom scan.
    pub axiom_cap: u64,
    /// Largest ring the brute-force oracle will enumerate.
    pub oracle_budget: u64,
    /// Worker threads; 0 runs every scan on the calling thread.
    pub threads: usize,
    /// Report the first failing element found by the heuristic prefix
    /// instead of the smallest failing index.
    pub first_found: bool,
    /// Try scalar matrices before the ascending scan.
    pub scalar_prefix: bool,
    /// Seed for the sampled spot checks.
    pub seed: u64,
}

pub const DEFAULT_ORDER_CAP: u64 = 1 << 32;
pub const DEFAULT_SCAN_CAP: u64 = 65_536;
pub const DEFAULT_IDEAL_CAP: u64 = 256;
pub const DEFAULT_AXIOM_CAP: u64 = 256;
pub const DEFAULT_ORACLE_BUDGET: u64 = 1 << 20;

impl Default for Config {
    fn default() -> Self {
        Config {
            order_cap: DEFAULT_ORDER_CAP,
            scan_cap: DEFAULT_SCAN_CAP,
            ideal_cap: DEFAULT_IDEAL_CAP,
            axiom_cap: DEFAULT_AXIOM_CAP,
            oracle_budget: DEFAULT_ORACLE_BUDGET,
            threads: 0,
            first_found: false,
            scalar_prefix: true,
            seed: 0x6e69_6c63_6c65_616e,
        }
    }
}

impl Config {
    pub fn sequential() -> Self {
        Config::default()
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.oracle_budget = budget;
        self
    }

    pub fn parallel(&self) -> bool {
        self.threads > 0
    }
}
