//! Reduction from 3-SAT to "does G have an exchange-independent set of
//! size at least k", plus tools to check the reduction on tiny formulas.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::convexity::Closure;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::independence::{
    exchange_set_at_least, is_e_independent, ExchangeCertificate, SearchBudget, SearchOutcome,
};
use crate::set::VertexSet;

/// A CNF formula with exactly three literals per clause. Literals are
/// nonzero, 1-based, negative for negation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<[i32; 3]>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<[i32; 3]>) -> Result<Self> {
        let f = Self { num_vars, clauses };
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<()> {
        if self.clauses.len() < 2 {
            return Err(Error::Formula("at least two clauses are required".into()));
        }
        for (i, c) in self.clauses.iter().enumerate() {
            for &lit in c {
                if lit == 0 || lit.unsigned_abs() as usize > self.num_vars {
                    return Err(Error::Formula(format!(
                        "clause {} has literal {lit} outside 1..={}",
                        i + 1,
                        self.num_vars
                    )));
                }
            }
        }
        Ok(())
    }

    /// Parses DIMACS CNF: `c` comment lines, a `p cnf VARS CLAUSES` header,
    /// clauses as literals terminated by `0` (possibly spanning lines).
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current: Vec<i32> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if line.starts_with('p') {
                let parts: Vec<&str> = line.split_whitespace().collect();
                if header.is_some() || parts.len() != 4 || parts[1] != "cnf" {
                    return Err(Error::parse(line_no, "expected `p cnf VARS CLAUSES`"));
                }
                let num = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| Error::parse(line_no, format!("bad count `{s}`")))
                };
                header = Some((num(parts[2])?, num(parts[3])?));
                continue;
            }
            if header.is_none() {
                return Err(Error::parse(line_no, "clause before `p cnf` header"));
            }
            for tok in line.split_whitespace() {
                let lit: i32 = tok
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("bad literal `{tok}`")))?;
                if lit != 0 {
                    current.push(lit);
                    continue;
                }
                let clause: [i32; 3] = current.as_slice().try_into().map_err(|_| {
                    Error::parse(
                        line_no,
                        format!("clause has {} literals, expected 3", current.len()),
                    )
                })?;
                clauses.push(clause);
                current.clear();
            }
        }
        let (num_vars, count) = header.ok_or_else(|| Error::parse(0, "missing `p cnf` header"))?;
        if !current.is_empty() {
            return Err(Error::parse(0, "last clause is not terminated by 0"));
        }
        if clauses.len() != count {
            return Err(Error::parse(
                0,
                format!("header declares {count} clauses but {} were read", clauses.len()),
            ));
        }
        Self::new(num_vars, clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            out.push_str(&format!("{} {} {} 0\n", c[0], c[1], c[2]));
        }
        out
    }

    /// Value of `lit` under `assignment` (index `v - 1` holds variable `v`).
    pub fn literal_value(lit: i32, assignment: &[bool]) -> bool {
        assignment[lit.unsigned_abs() as usize - 1] == (lit > 0)
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|&l| Self::literal_value(l, assignment)))
    }

    /// First satisfying assignment in counting order (variable 1 is the
    /// least significant bit), by enumerating the truth table.
    pub fn solve_by_truth_table(&self) -> Result<Option<Vec<bool>>> {
        if self.num_vars > 24 {
            return Err(Error::param("truth-table enumeration limited to 24 variables"));
        }
        for mask in 0u32..(1u32 << self.num_vars) {
            let a: Vec<bool> = (0..self.num_vars).map(|i| mask >> i & 1 == 1).collect();
            if self.satisfied_by(&a) {
                return Ok(Some(a));
            }
        }
        Ok(None)
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lit = |l: i32| {
            if l > 0 {
                format!("x{l}")
            } else {
                format!("!x{}", -l)
            }
        };
        let parts: Vec<String> = self
            .clauses
            .iter()
            .map(|c| format!("({} | {} | {})", lit(c[0]), lit(c[1]), lit(c[2])))
            .collect();
        f.write_str(&parts.join(" & "))
    }
}

/// Role of a vertex in the reduction graph. Clause indices and positions
/// are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Clause(usize),
    /// Triangle vertex `sub ∈ {1,2,3}` of the literal at `position` in `clause`.
    Literal { clause: usize, position: usize, sub: u8 },
    /// Vertex `sub ∈ {4,5}` attached to a literal occurrence for one
    /// opposite pair.
    PairVertex { pair: usize, clause: usize, position: usize, sub: u8 },
    W { clause: usize, prime: bool },
    D,
    Z { prime: bool },
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Role::Clause(i) => write!(f, "c{i}"),
            Role::Literal { clause, position, sub } => write!(f, "l{sub}[{clause}.{position}]"),
            Role::PairVertex { pair, clause, position, sub } => {
                write!(f, "l{sub}[{clause}.{position}]#p{pair}")
            }
            Role::W { clause, prime } => write!(f, "w{clause}{}", if prime { "'" } else { "" }),
            Role::D => f.write_str("d"),
            Role::Z { prime } => write!(f, "z{}", if prime { "'" } else { "" }),
        }
    }
}

impl Serialize for Role {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Vertex classes used by the reduction's correctness argument.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoleSets {
    pub a: VertexSet,
    pub b: VertexSet,
    pub c: VertexSet,
    pub d: VertexSet,
    pub w: VertexSet,
    pub z: VertexSet,
}

/// An opposite-literal pair of occurrences `(clause, position)`, the first
/// in the lower-numbered clause.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OppositePair {
    pub first: (usize, usize),
    pub second: (usize, usize),
}

#[derive(Debug, Clone, Serialize)]
pub struct ReductionOutput {
    #[serde(skip)]
    pub graph: Graph,
    pub k: usize,
    pub labels: Vec<Role>,
    pub role_sets: RoleSets,
    pub pairs: Vec<OppositePair>,
    /// How pair vertices are allocated; always `per-pair`.
    pub pair_reading: &'static str,
}

impl ReductionOutput {
    pub fn vertex(&self, role: Role) -> Option<usize> {
        self.labels.iter().position(|&r| r == role)
    }

    fn id(&self, role: Role) -> usize {
        self.vertex(role).expect("role present in reduction")
    }
}

/// Builds the reduction graph. Every unordered pair of opposite literal
/// occurrences in distinct clauses gets its own four vertices.
pub fn build_reduction(phi: &CnfFormula) -> Result<ReductionOutput> {
    phi.validate()?;
    let m = phi.clauses.len();
    let mut labels = Vec::new();
    for i in 1..=m {
        labels.push(Role::Clause(i));
        for position in 1..=3 {
            for sub in 1..=3 {
                labels.push(Role::Literal { clause: i, position, sub });
            }
        }
        labels.push(Role::W { clause: i, prime: false });
        labels.push(Role::W { clause: i, prime: true });
    }
    let mut pairs = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for a in 0..3 {
                for b in 0..3 {
                    if phi.clauses[i][a] == -phi.clauses[j][b] {
                        pairs.push(OppositePair {
                            first: (i + 1, a + 1),
                            second: (j + 1, b + 1),
                        });
                    }
                }
            }
        }
    }
    for (q, pr) in pairs.iter().enumerate() {
        for (clause, position) in [pr.first, pr.second] {
            for sub in [4, 5] {
                labels.push(Role::PairVertex { pair: q + 1, clause, position, sub });
            }
        }
    }
    labels.push(Role::D);
    labels.push(Role::Z { prime: false });
    labels.push(Role::Z { prime: true });

    let n = labels.len();
    let index = |r: Role| labels.iter().position(|&x| x == r).expect("label");
    let lit = |clause, position, sub| index(Role::Literal { clause, position, sub });
    let mut edges = Vec::new();
    for i in 1..=m {
        let c = index(Role::Clause(i));
        let w = index(Role::W { clause: i, prime: false });
        let w2 = index(Role::W { clause: i, prime: true });
        edges.push((w, w2));
        for pos in 1..=3 {
            let (l1, l2, l3) = (lit(i, pos, 1), lit(i, pos, 2), lit(i, pos, 3));
            edges.extend([(l1, l2), (l2, l3), (l1, l3), (c, l1), (c, l2), (c, l3)]);
            edges.extend([(w, l1), (w2, l1)]);
        }
    }
    for (q, pr) in pairs.iter().enumerate() {
        let pv = |(clause, position): (usize, usize), sub| {
            index(Role::PairVertex { pair: q + 1, clause, position, sub })
        };
        let (l4, l5) = (pv(pr.first, 4), pv(pr.first, 5));
        let (m4, m5) = (pv(pr.second, 4), pv(pr.second, 5));
        let ci = index(Role::Clause(pr.first.0));
        let cj = index(Role::Clause(pr.second.0));
        let (l2, l3) = (lit(pr.first.0, pr.first.1, 2), lit(pr.first.0, pr.first.1, 3));
        let (m2, m3) = (lit(pr.second.0, pr.second.1, 2), lit(pr.second.0, pr.second.1, 3));
        edges.extend([(ci, l4), (l2, l4), (l3, l4), (l5, l4), (m5, l4)]);
        edges.extend([(cj, m4), (m2, m4), (m3, m4), (l5, m4), (m5, m4)]);
        edges.push((l5, m5));
    }
    let d = index(Role::D);
    edges.push((d, index(Role::Clause(1))));
    edges.push((d, index(Role::Clause(m))));
    for i in 1..m {
        edges.push((index(Role::Clause(i)), index(Role::Clause(i + 1))));
    }
    let (z, z2) = (index(Role::Z { prime: false }), index(Role::Z { prime: true }));
    edges.push((z, z2));

    let mut sets = RoleSets {
        a: VertexSet::empty(n),
        b: VertexSet::empty(n),
        c: VertexSet::empty(n),
        d: VertexSet::singleton(n, d),
        w: VertexSet::empty(n),
        z: VertexSet::from_ids(n, [z, z2]),
    };
    for (v, role) in labels.iter().enumerate() {
        match *role {
            Role::Clause(_) => sets.c.insert(v),
            Role::Literal { sub: 1, .. } | Role::PairVertex { sub: 4, .. } => sets.a.insert(v),
            Role::Literal { .. } => sets.b.insert(v),
            Role::W { .. } | Role::PairVertex { .. } => sets.w.insert(v),
            Role::D | Role::Z { .. } => false,
        };
    }
    for wv in sets.w.iter() {
        edges.push((z, wv));
        edges.push((z2, wv));
    }

    Ok(ReductionOutput {
        graph: Graph::from_edges(n, edges)?,
        k: 2 * m + 1,
        labels,
        role_sets: sets,
        pairs,
        pair_reading: "per-pair",
    })
}

/// A 5-clique, lowest vertices first, if the graph has one.
pub fn find_k5(g: &Graph) -> Option<[usize; 5]> {
    let n = g.order();
    for a in 0..n {
        let na = g.adj(a);
        for b in na.iter().filter(|&b| b > a) {
            let nab = na.intersection(g.adj(b));
            for c in nab.iter().filter(|&c| c > b) {
                let nabc = nab.intersection(g.adj(c));
                for d in nabc.iter().filter(|&d| d > c) {
                    let nabcd = nabc.intersection(g.adj(d));
                    if let Some(e) = nabcd.iter().find(|&e| e > d) {
                        return Some([a, b, c, d, e]);
                    }
                }
            }
        }
    }
    None
}

/// The forward-direction set: `z` plus `ℓ_2, ℓ_3` of the first true
/// literal of each clause.
pub fn forward_witness(
    phi: &CnfFormula,
    red: &ReductionOutput,
    assignment: &[bool],
) -> Result<VertexSet> {
    if !phi.satisfied_by(assignment) {
        return Err(Error::param("assignment does not satisfy the formula"));
    }
    let n = red.graph.order();
    let mut s = VertexSet::singleton(n, red.id(Role::Z { prime: false }));
    for (i, c) in phi.clauses.iter().enumerate() {
        let pos = c
            .iter()
            .position(|&l| CnfFormula::literal_value(l, assignment))
            .expect("satisfied clause has a true literal")
            + 1;
        for sub in [2, 3] {
            s.insert(red.id(Role::Literal { clause: i + 1, position: pos, sub }));
        }
    }
    Ok(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Consistent,
    Inconsistent,
    Timeout,
}

/// Checks on the forward witness of a satisfiable formula.
#[derive(Debug, Clone, Serialize)]
pub struct ForwardCheck {
    pub witness: VertexSet,
    /// Certificate from the independence test, if the witness passes.
    pub certificate: Option<ExchangeCertificate>,
    pub z_is_pivot: bool,
    /// `hull(S ∖ {z})` equals `C ∪ D ∪` the chosen literals' vertices.
    pub hull_matches: bool,
    /// Every vertex outside that hull has at most one neighbour in it.
    pub outside_degree_ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verification {
    pub verdict: Verdict,
    pub satisfiable: bool,
    pub assignment: Option<Vec<bool>>,
    pub order: usize,
    pub k: usize,
    pub k5_free: bool,
    pub forward: Option<ForwardCheck>,
    /// Result of the exhaustive search for a set of size `>= k`; skipped
    /// for satisfiable formulas unless requested.
    pub search: Option<SearchOutcome>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    pub budget: SearchBudget,
    /// Also run the exhaustive search when the forward witness exists.
    pub search_satisfiable: bool,
}

/// Builds the reduction and checks that satisfiability matches the
/// existence of an exchange-independent set of size `2m + 1`.
pub fn verify_reduction(phi: &CnfFormula, opts: VerifyOptions) -> Result<Verification> {
    let red = build_reduction(phi)?;
    let g = &red.graph;
    let assignment = phi.solve_by_truth_table()?;
    let satisfiable = assignment.is_some();

    let forward = match &assignment {
        Some(a) => Some(check_forward(phi, &red, a)?),
        None => None,
    };
    let forward_ok = forward.as_ref().map(|f| {
        f.certificate.is_some() && f.z_is_pivot && f.hull_matches && f.outside_degree_ok
    });

    let search = if !satisfiable || opts.search_satisfiable {
        Some(exchange_set_at_least(g, red.k, opts.budget)?)
    } else {
        None
    };

    let verdict = match (satisfiable, &search) {
        (_, Some(SearchOutcome::Timeout { .. })) => Verdict::Timeout,
        (true, Some(SearchOutcome::Absent { .. })) => Verdict::Inconsistent,
        (false, Some(SearchOutcome::Found { .. })) => Verdict::Inconsistent,
        (false, _) => Verdict::Consistent,
        (true, _) if forward_ok == Some(true) => Verdict::Consistent,
        (true, _) => Verdict::Inconsistent,
    };
    Ok(Verification {
        verdict,
        satisfiable,
        assignment,
        order: g.order(),
        k: red.k,
        k5_free: find_k5(g).is_none(),
        forward,
        search,
    })
}

fn check_forward(phi: &CnfFormula, red: &ReductionOutput, a: &[bool]) -> Result<ForwardCheck> {
    let g = &red.graph;
    let n = g.order();
    let s = forward_witness(phi, red, a)?;
    let z = red.id(Role::Z { prime: false });
    let certificate = is_e_independent(g, &s)?;

    let mut c = Closure::new(g);
    let h = c.hull(&s.without(z));
    let z_is_pivot = {
        let others = s
            .iter()
            .filter(|&v| v != z)
            .fold(VertexSet::empty(n), |acc, v| acc.union(&c.hull(&s.without(v))));
        !h.difference(&others).is_empty()
    };

    let mut expected = red.role_sets.c.union(&red.role_sets.d);
    for (i, cl) in phi.clauses.iter().enumerate() {
        let pos = cl
            .iter()
            .position(|&l| CnfFormula::literal_value(l, a))
            .expect("true literal")
            + 1;
        for sub in 1..=3 {
            expected.insert(red.id(Role::Literal { clause: i + 1, position: pos, sub }));
        }
        for (v, role) in red.labels.iter().enumerate() {
            if let Role::PairVertex { clause, position, sub: 4, .. } = *role {
                if clause == i + 1 && position == pos {
                    expected.insert(v);
                }
            }
        }
    }
    let outside_degree_ok = h
        .complement()
        .iter()
        .all(|v| g.adj(v).intersection_len(&h) <= 1);
    Ok(ForwardCheck {
        witness: s,
        certificate,
        z_is_pivot,
        hull_matches: h == expected,
        outside_degree_ok,
    })
}

/// Two-clause formulas over three variables, one per class under variable
/// renaming, sign flips, clause order and literal order within a clause.
pub fn two_clause_corpus() -> Vec<CnfFormula> {
    let lits: Vec<i32> = (1..=3).flat_map(|v| [v, -v]).collect();
    let mut clauses = Vec::new();
    for &a in &lits {
        for &b in &lits {
            for &c in &lits {
                let mut cl = [a, b, c];
                cl.sort_by_key(|&l| (l.abs(), l));
                if !clauses.contains(&cl) {
                    clauses.push(cl);
                }
            }
        }
    }
    let mut seen: Vec<Vec<[i32; 3]>> = Vec::new();
    let mut out = Vec::new();
    for i in 0..clauses.len() {
        for j in i..clauses.len() {
            let f = vec![clauses[i], clauses[j]];
            let key = canonical(&f);
            if !seen.contains(&key) {
                seen.push(key);
                out.push(CnfFormula::new(3, f).expect("valid corpus formula"));
            }
        }
    }
    out
}

fn canonical(f: &[[i32; 3]]) -> Vec<[i32; 3]> {
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut best: Option<Vec<[i32; 3]>> = None;
    for perm in perms {
        for signs in 0..8u8 {
            let map = |l: i32| {
                let v = l.unsigned_abs() as usize - 1;
                let flip = if signs >> v & 1 == 1 { -1 } else { 1 };
                (perm[v] + 1) * l.signum() * flip
            };
            let mut img: Vec<[i32; 3]> = f
                .iter()
                .map(|c| {
                    let mut c = c.map(map);
                    c.sort_by_key(|&l| (l.abs(), l));
                    c
                })
                .collect();
            img.sort();
            if best.as_ref().is_none_or(|b| img < *b) {
                best = Some(img);
            }
        }
    }
    best.expect("at least one image")
}
