//! Backtracking over ternary tables with domain propagation.
//!
//! Cells are `p(a,b,c)` at index `a·n² + b·n + c`; each domain is a bitmask
//! of candidate values. Pinned axioms (A1 to A5) restrict domains up front.
//! Every instance of the right distributive law and of the medial law
//! becomes an equality between two outer cells once its inner cells are
//! fixed; equalities are kept as links so later narrowing flows both ways.
//! Cancellation keeps every column of the ½-slice all-different. The
//! ½-slice symmetry `p(a,½,b) = p(b,½,a)`, a consequence of A1, A4, A5 and
//! right distributivity, is linked statically.

pub const MAX_ORDER: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellOrder {
    /// Lexicographic over triples.
    Lex,
    /// Smallest remaining domain first, ties in lexicographic order.
    SmallestDomain,
}

#[derive(Clone, Debug)]
pub struct EngineConfig {
    pub n: usize,
    pub zero: usize,
    pub half: usize,
    pub one: usize,
    /// Enforce cancellation in the ½-slice (A6).
    pub cancellative: bool,
    /// Optional initial domain per cell.
    pub domains: Option<Vec<u64>>,
    pub order: CellOrder,
    /// Maximum number of branching decisions.
    pub cap: u64,
    pub max_solutions: Option<usize>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EngineStats {
    pub nodes: u64,
    pub solutions: u64,
    pub capped: bool,
    /// Closed at the root by the parity argument: with cancellation the
    /// ½-slice is a symmetric Latin square with diagonal `a`, so every symbol
    /// occurs an even number `n − 1` of times off the diagonal.
    pub parity_pruned: bool,
}

#[derive(Clone, Copy)]
enum Instance {
    /// `p(a, p(c1,c2,c3), b) = p(p(a,c1,b), c2, p(a,c3,b))`
    RightDist([u8; 5]),
    /// `p(p(a1,c,b1), ½, p(a2,c,b2)) = p(p(a1,½,a2), c, p(b1,½,b2))`
    Medial([u8; 5]),
}

enum Trail {
    Dom(u32, u64),
    Link(u32),
}

struct Engine<'c> {
    cfg: &'c EngineConfig,
    n: usize,
    dom: Vec<u64>,
    links: Vec<Vec<u32>>,
    mirror: Vec<Option<u32>>,
    instances: Vec<Instance>,
    watch: Vec<Vec<u32>>,
    trail: Vec<Trail>,
    queue: Vec<u32>,
    stats: EngineStats,
    stop: bool,
}

fn single(mask: u64) -> Option<usize> {
    (mask != 0 && mask & (mask - 1) == 0).then(|| mask.trailing_zeros() as usize)
}

impl<'c> Engine<'c> {
    fn cell(&self, a: usize, b: usize, c: usize) -> usize {
        (a * self.n + b) * self.n + c
    }

    fn value(&self, cell: usize) -> Option<usize> {
        single(self.dom[cell])
    }

    fn inner(&self, inst: Instance) -> ([usize; 4], usize) {
        let h = self.cfg.half;
        match inst {
            Instance::RightDist([a, c1, c2, c3, b]) => {
                let [a, c1, c2, c3, b] = [a, c1, c2, c3, b].map(usize::from);
                ([self.cell(c1, c2, c3), self.cell(a, c1, b), self.cell(a, c3, b), 0], 3)
            }
            Instance::Medial([a1, b1, a2, b2, c]) => {
                let [a1, b1, a2, b2, c] = [a1, b1, a2, b2, c].map(usize::from);
                (
                    [self.cell(a1, c, b1), self.cell(a2, c, b2), self.cell(a1, h, a2), self.cell(b1, h, b2)],
                    4,
                )
            }
        }
    }

    /// Outer cells of an instance whose inner cells are all fixed.
    fn outer(&self, inst: Instance) -> Option<(usize, usize)> {
        let (inner, len) = self.inner(inst);
        let mut v = [0usize; 4];
        for i in 0..len {
            v[i] = self.value(inner[i])?;
        }
        let h = self.cfg.half;
        Some(match inst {
            Instance::RightDist([a, _, c2, _, b]) => {
                (self.cell(a as usize, v[0], b as usize), self.cell(v[1], c2 as usize, v[2]))
            }
            Instance::Medial([.., c]) => (self.cell(v[0], h, v[1]), self.cell(v[2], c as usize, v[3])),
        })
    }

    fn new(cfg: &'c EngineConfig) -> Engine<'c> {
        let n = cfg.n;
        assert!((1..=MAX_ORDER).contains(&n), "table order {n} outside 1..={MAX_ORDER}");
        let cells = n * n * n;
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let dom = match &cfg.domains {
            Some(d) => d.iter().map(|m| m & full).collect(),
            None => vec![full; cells],
        };
        let mut engine = Engine {
            cfg,
            n,
            dom,
            links: vec![Vec::new(); cells],
            mirror: vec![None; cells],
            instances: Vec::new(),
            watch: vec![Vec::new(); cells],
            trail: Vec::new(),
            queue: Vec::new(),
            stats: EngineStats::default(),
            stop: false,
        };
        let h = cfg.half;
        for a in 0..n {
            for c in 0..n {
                if a != c {
                    let m = engine.cell(c, h, a) as u32;
                    let x = engine.cell(a, h, c);
                    engine.mirror[x] = Some(m);
                }
            }
        }
        let mut t = [0u8; 5];
        for idx in 0..n.pow(5) {
            let mut rest = idx;
            for slot in t.iter_mut().rev() {
                *slot = (rest % n) as u8;
                rest /= n;
            }
            engine.instances.push(Instance::RightDist(t));
            engine.instances.push(Instance::Medial(t));
        }
        for (id, &inst) in engine.instances.iter().enumerate() {
            let (inner, len) = engine.inner(inst);
            for i in 0..len {
                if !inner[..i].contains(&inner[i]) {
                    engine.watch[inner[i]].push(id as u32);
                }
            }
        }
        engine
    }

    fn narrow(&mut self, cell: usize, mask: u64) -> bool {
        let old = self.dom[cell];
        let new = old & mask;
        if new == 0 {
            return false;
        }
        if new != old {
            self.trail.push(Trail::Dom(cell as u32, old));
            self.dom[cell] = new;
            self.queue.push(cell as u32);
        }
        true
    }

    fn link(&mut self, x: usize, y: usize) {
        self.links[x].push(y as u32);
        self.trail.push(Trail::Link(x as u32));
        self.links[y].push(x as u32);
        self.trail.push(Trail::Link(y as u32));
    }

    fn propagate(&mut self) -> bool {
        while let Some(x) = self.queue.pop() {
            let x = x as usize;
            let d = self.dom[x];
            if let Some(m) = self.mirror[x] {
                if !self.narrow(m as usize, d) {
                    return false;
                }
            }
            let mut i = 0;
            while i < self.links[x].len() {
                let partner = self.links[x][i] as usize;
                if !self.narrow(partner, d) {
                    return false;
                }
                i += 1;
            }
            let Some(v) = single(d) else { continue };
            let (n, h) = (self.n, self.cfg.half);
            if self.cfg.cancellative && (x / n) % n == h {
                let (a, c) = (x / (n * n), x % n);
                for other in 0..n {
                    if other != a {
                        let cell = self.cell(other, h, c);
                        if !self.narrow(cell, !(1u64 << v)) {
                            return false;
                        }
                    }
                }
            }
            for w in 0..self.watch[x].len() {
                let inst = self.instances[self.watch[x][w] as usize];
                if let Some((l, r)) = self.outer(inst) {
                    if l == r {
                        continue;
                    }
                    self.link(l, r);
                    let (dl, dr) = (self.dom[l], self.dom[r]);
                    if !self.narrow(l, dr) || !self.narrow(r, dl) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().expect("trail above mark") {
                Trail::Dom(cell, old) => self.dom[cell as usize] = old,
                Trail::Link(cell) => {
                    self.links[cell as usize].pop();
                }
            }
        }
        self.queue.clear();
    }

    fn pins(&mut self) -> bool {
        let n = self.n;
        let (z, h, o) = (self.cfg.zero, self.cfg.half, self.cfg.one);
        let mut pins = vec![(self.cell(o, h, z), h)];
        for a in 0..n {
            pins.push((self.cell(z, a, o), a));
            for b in 0..n {
                pins.push((self.cell(a, b, a), a));
                pins.push((self.cell(a, z, b), a));
                pins.push((self.cell(a, o, b), b));
            }
        }
        pins.into_iter().all(|(cell, v)| self.narrow(cell, 1 << v))
    }

    fn choose(&self) -> Option<usize> {
        let open = (0..self.dom.len()).filter(|&c| single(self.dom[c]).is_none());
        match self.cfg.order {
            CellOrder::Lex => open.into_iter().next(),
            CellOrder::SmallestDomain => open.min_by_key(|&c| (self.dom[c].count_ones(), c)),
        }
    }

    fn search(&mut self, on_solution: &mut dyn FnMut(&[u8])) {
        let Some(cell) = self.choose() else {
            self.stats.solutions += 1;
            let cells: Vec<u8> = self.dom.iter().map(|&m| m.trailing_zeros() as u8).collect();
            on_solution(&cells);
            if self.cfg.max_solutions.is_some_and(|m| self.stats.solutions >= m as u64) {
                self.stop = true;
            }
            return;
        };
        let mut options = self.dom[cell];
        while options != 0 {
            let v = options.trailing_zeros();
            options &= options - 1;
            if self.stats.nodes >= self.cfg.cap {
                self.stats.capped = true;
                self.stop = true;
                return;
            }
            self.stats.nodes += 1;
            let mark = self.trail.len();
            if self.narrow(cell, 1 << v) && self.propagate() {
                self.search(on_solution);
            }
            self.undo(mark);
            if self.stop {
                return;
            }
        }
    }
}

/// Runs the search, handing every complete table to `on_solution`.
pub fn run(cfg: &EngineConfig, mut on_solution: impl FnMut(&[u8])) -> EngineStats {
    if cfg.cancellative && cfg.n.is_multiple_of(2) {
        return EngineStats { parity_pruned: true, ..EngineStats::default() };
    }
    let mut engine = Engine::new(cfg);
    engine.queue = (0..engine.dom.len() as u32).collect();
    if !(engine.pins() && engine.propagate()) {
        return engine.stats;
    }
    engine.trail.clear();
    engine.search(&mut on_solution);
    engine.stats
}
