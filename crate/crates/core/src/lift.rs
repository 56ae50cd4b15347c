//! Search for integer representatives of the grading-0 classes of the
//! six-point disk that all three arc attachments send to chosen generators.
//!
//! Unknowns are primitive vectors `a, b, d ∈ Z²` (for `K1, K2, K3`) and
//! functionals `φ1, φ2, φ3: Z² → Z`. A pattern fixes `φj(x)` for every pair.
//! Exact mode demands those values; relaxed mode accepts `±` on nonzero ones.
//!
//! The search first applies the normalization `a = (1, 0)`, `φ1 = (1, 0)`,
//! which a unimodular change of basis reaches whenever `φ1(a) = 1` (see
//! [`normalizing_matrix`]). It then binds one unknown at a time, always the
//! one with fewest candidates. Candidates come from exact linear algebra
//! when two bound partners are independent, from the two primitive kernel
//! vectors when a vector must vanish under one functional, and only
//! otherwise from a scan of the search box. The certificate records which
//! rule produced every step, so its conclusion does not depend on the box
//! unless it contains a `scan` line.

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::catalog;
use crate::glue::{arc_attachment, glue_map, GlueError};
use crate::dividing::DividingSet;
use crate::module::{build_module, ModuleError, TqftModule};
use crate::surface::MarkedSurface;

pub type V2 = [i64; 2];
pub type Mat2 = [[i64; 2]; 2];

const NAMES: [&str; 6] = ["a", "b", "d", "phi1", "phi2", "phi3"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SignMode {
    Exact,
    UpToSign,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftProblem {
    /// `pattern[j][i]` is the required `φ(j+1)` value on unknown `i` (`a, b, d`).
    pub pattern: [[i64; 3]; 3],
    pub mode: SignMode,
    pub search_box: i64,
}

impl LiftProblem {
    /// The incidence pattern of the three arc attachments on `K1, K2, K3`.
    pub fn attachments(search_box: i64) -> Self {
        LiftProblem { pattern: [[1, 1, 0], [0, 1, 1], [1, 0, 1]], mode: SignMode::Exact, search_box }
    }

    pub fn relaxed(mut self) -> Self {
        self.mode = SignMode::UpToSign;
        self
    }

    /// Control pattern in which the first two functionals see the same data.
    pub fn degenerate(search_box: i64) -> Self {
        LiftProblem { pattern: [[1, 1, 0], [1, 1, 0], [1, 0, 1]], mode: SignMode::Exact, search_box }
    }

    fn allowed(&self, j: usize, i: usize) -> Vec<i64> {
        let v = self.pattern[j][i];
        match self.mode {
            SignMode::UpToSign if v != 0 => vec![v, -v],
            _ => vec![v],
        }
    }

    /// Constraints touching variable `x`: `(partner, allowed values)`.
    fn constraints(&self, x: usize) -> Vec<(usize, Vec<i64>)> {
        if x < 3 {
            (0..3).map(|j| (3 + j, self.allowed(j, x))).collect()
        } else {
            (0..3).map(|i| (i, self.allowed(x - 3, i))).collect()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assignment {
    pub vectors: [V2; 3],
    pub functionals: [V2; 3],
}

impl Assignment {
    fn from_bindings(b: &[Option<V2>; 6]) -> Self {
        Assignment { vectors: [b[0].unwrap(), b[1].unwrap(), b[2].unwrap()], functionals: [b[3].unwrap(), b[4].unwrap(), b[5].unwrap()] }
    }

    pub fn value(&self, j: usize, i: usize) -> i64 {
        dot(self.functionals[j], self.vectors[i])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftOutcome {
    Infeasible,
    Feasible(Assignment),
}

#[derive(Clone, Debug)]
pub struct LiftResult {
    pub outcome: LiftOutcome,
    pub certificate: String,
}

impl LiftResult {
    pub fn is_infeasible(&self) -> bool {
        self.outcome == LiftOutcome::Infeasible
    }
}

fn dot(u: V2, v: V2) -> i64 {
    u[0] * v[0] + u[1] * v[1]
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn is_primitive(v: V2) -> bool {
    gcd(v[0], v[1]) == 1
}

fn fmt_v(v: V2) -> String {
    format!("({},{})", v[0], v[1])
}

fn parse_v(s: &str) -> Option<V2> {
    let inner = s.strip_prefix('(')?.strip_suffix(')')?;
    let (x, y) = inner.split_once(',')?;
    Some([x.trim().parse().ok()?, y.trim().parse().ok()?])
}

fn var_index(name: &str) -> Option<usize> {
    NAMES.iter().position(|n| *n == name)
}

/// Rule that produced a candidate list.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Rule {
    /// Solve against two independent bound partners.
    Solve(usize, usize),
    /// Primitive vectors in the kernel of a bound functional.
    Kernel(usize),
    /// Enumerate the search box.
    Scan,
}

impl Rule {
    fn describe(&self) -> String {
        match self {
            Rule::Solve(p, q) => format!("from {},{}", NAMES[*p], NAMES[*q]),
            Rule::Kernel(p) => format!("kernel {}", NAMES[*p]),
            Rule::Scan => "scan".to_string(),
        }
    }

    fn parse(s: &str) -> Option<Rule> {
        if s == "scan" {
            return Some(Rule::Scan);
        }
        if let Some(rest) = s.strip_prefix("from ") {
            let (p, q) = rest.split_once(',')?;
            return Some(Rule::Solve(var_index(p)?, var_index(q)?));
        }
        let p = s.strip_prefix("kernel ")?;
        Some(Rule::Kernel(var_index(p)?))
    }
}

/// A raw candidate and, if it fails, why.
struct Raw {
    value: Option<V2>,
    failure: Option<String>,
}

/// Chooses the rule for `x` given the current bindings.
fn pick_rule(p: &LiftProblem, x: usize, bound: &[Option<V2>; 6]) -> Rule {
    let partners: Vec<(usize, Vec<i64>)> = p.constraints(x).into_iter().filter(|(q, _)| bound[*q].is_some()).collect();
    for i in 0..partners.len() {
        for j in (i + 1..partners.len()).rev() {
            let (u, v) = (bound[partners[i].0].unwrap(), bound[partners[j].0].unwrap());
            if u[0] * v[1] - u[1] * v[0] != 0 {
                return Rule::Solve(partners[i].0, partners[j].0);
            }
        }
    }
    if x < 3 {
        if let Some((q, _)) = partners.iter().find(|(q, vals)| vals == &[0] && bound[*q] != Some([0, 0])) {
            return Rule::Kernel(*q);
        }
    }
    Rule::Scan
}

/// Candidates for `x` under `rule`, each checked against every constraint
/// with a bound partner and against primitivity for vectors.
fn candidates(p: &LiftProblem, x: usize, bound: &[Option<V2>; 6], rule: &Rule) -> Vec<Raw> {
    let raw: Vec<Result<V2, String>> = match *rule {
        Rule::Solve(q1, q2) => {
            let (u, v) = (bound[q1].unwrap(), bound[q2].unwrap());
            let det = u[0] * v[1] - u[1] * v[0];
            let vals = |q: usize| p.constraints(x).into_iter().find(|(r, _)| *r == q).map(|(_, vals)| vals).unwrap();
            let mut out = Vec::new();
            for s in vals(q1) {
                for t in vals(q2) {
                    // u·X = s, v·X = t.
                    let nx = s * v[1] - t * u[1];
                    let ny = t * u[0] - s * v[0];
                    if nx % det != 0 || ny % det != 0 {
                        out.push(Err(format!("{}={s},{}={t} not integral", NAMES[q1], NAMES[q2])));
                    } else {
                        out.push(Ok([nx / det, ny / det]));
                    }
                }
            }
            out
        }
        Rule::Kernel(q) => {
            let w = bound[q].unwrap();
            let g = gcd(w[0], w[1]);
            let k = [-w[1] / g, w[0] / g];
            vec![Ok(k), Ok([-k[0], -k[1]])]
        }
        Rule::Scan => {
            let b = p.search_box;
            let mut out = Vec::new();
            for i in -b..=b {
                for j in -b..=b {
                    out.push(Ok([i, j]));
                }
            }
            out
        }
    };
    raw.into_iter()
        .map(|r| match r {
            Err(e) => Raw { value: None, failure: Some(e) },
            Ok(v) => Raw { value: Some(v), failure: check(p, x, v, bound) },
        })
        .collect()
}

fn check(p: &LiftProblem, x: usize, v: V2, bound: &[Option<V2>; 6]) -> Option<String> {
    if x < 3 && !is_primitive(v) {
        return Some(format!("{} not primitive", fmt_v(v)));
    }
    for (q, vals) in p.constraints(x) {
        if let Some(w) = bound[q] {
            let val = dot(v, w);
            if !vals.contains(&val) {
                let (f, vec) = if x < 3 { (q, x) } else { (x, q) };
                let need = vals.iter().map(i64::to_string).collect::<Vec<_>>().join("|");
                return Some(format!("{}: {}({})={val} need {need}", fmt_v(v), NAMES[f], NAMES[vec]));
            }
        }
    }
    None
}

/// Why every candidate of a dead step fails.
fn dead_detail(p: &LiftProblem, x: usize, bound: &[Option<V2>; 6], rule: &Rule) -> String {
    if matches!(rule, Rule::Scan) {
        return "none in box".to_string();
    }
    let reasons: Vec<String> = candidates(p, x, bound, rule).into_iter().filter_map(|r| r.failure).collect();
    reasons.join("; ")
}

fn survivors(raws: &[Raw]) -> Vec<V2> {
    let mut out: Vec<V2> = Vec::new();
    for r in raws {
        if let (Some(v), None) = (r.value, &r.failure) {
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    out
}

struct Search<'p> {
    problem: &'p LiftProblem,
    lines: Vec<String>,
    stop_at_first: bool,
    found: Vec<Assignment>,
}

impl Search<'_> {
    fn emit(&mut self, depth: usize, line: String) {
        self.lines.push(format!("{}{}", "  ".repeat(depth), line));
    }

    fn dfs(&mut self, bound: &mut [Option<V2>; 6], depth: usize) -> bool {
        let p = self.problem;
        let open: Vec<usize> = (0..6).filter(|&x| bound[x].is_none()).collect();
        if open.is_empty() {
            let a = Assignment::from_bindings(bound);
            let signs: Vec<String> = (0..3)
                .flat_map(|j| (0..3).map(move |i| (j, i)))
                .filter(|&(j, i)| p.pattern[j][i] != 0)
                .map(|(j, i)| format!("{}({})={:+}", NAMES[3 + j], NAMES[i], a.value(j, i)))
                .collect();
            let vals: Vec<String> = (0..6).map(|x| format!("{}={}", NAMES[x], fmt_v(bound[x].unwrap()))).collect();
            self.emit(depth, format!("feasible {}", vals.join(" ")));
            self.emit(depth, format!("signs {}", signs.join(" ")));
            self.found.push(a);
            return self.stop_at_first;
        }
        let mut best: Option<(usize, Rule, Vec<V2>)> = None;
        for &x in &open {
            let rule = pick_rule(p, x, bound);
            let surv = survivors(&candidates(p, x, bound, &rule));
            let better = match &best {
                None => true,
                Some((_, r, s)) => {
                    let cost = |r: &Rule, s: &Vec<V2>| (matches!(r, Rule::Scan), s.len());
                    cost(&rule, &surv) < cost(r, s)
                }
            };
            if better {
                best = Some((x, rule, surv));
            }
        }
        let (x, rule, surv) = best.unwrap();
        match surv.len() {
            0 => {
                let detail = dead_detail(p, x, bound, &rule);
                self.emit(depth, format!("dead {} {}: {}", NAMES[x], rule.describe(), detail));
                false
            }
            1 => {
                self.emit(depth, format!("force {}={} {}", NAMES[x], fmt_v(surv[0]), rule.describe()));
                bound[x] = Some(surv[0]);
                let done = self.dfs(bound, depth);
                bound[x] = None;
                done
            }
            _ => {
                let list: Vec<String> = surv.iter().map(|v| fmt_v(*v)).collect();
                self.emit(depth, format!("choose {} {}: {}", NAMES[x], rule.describe(), list.join(" ")));
                for v in surv {
                    self.emit(depth, format!("case {}={}", NAMES[x], fmt_v(v)));
                    bound[x] = Some(v);
                    let done = self.dfs(bound, depth + 1);
                    bound[x] = None;
                    if done {
                        return true;
                    }
                }
                false
            }
        }
    }
}

fn header(p: &LiftProblem) -> Vec<String> {
    let mut out = vec!["lift-certificate 1".to_string()];
    out.push(format!("mode {}", if p.mode == SignMode::Exact { "exact" } else { "signed" }));
    out.push(format!("box {}", p.search_box));
    for j in 0..3 {
        let vals: Vec<String> = (0..3).map(|i| format!("{}={}", NAMES[i], p.pattern[j][i])).collect();
        out.push(format!("pattern {} {}", NAMES[3 + j], vals.join(" ")));
    }
    out
}

/// Initial bindings after the basis normalization.
fn normalization(p: &LiftProblem) -> ([Option<V2>; 6], String) {
    let mut bound = [None; 6];
    bound[0] = Some([1, 0]);
    if p.pattern[0][0] != 0 {
        bound[3] = Some([p.pattern[0][0], 0]);
        (bound, format!("normalize a=(1,0) phi1={}", fmt_v([p.pattern[0][0], 0])))
    } else {
        (bound, "normalize a=(1,0)".to_string())
    }
}

fn run(p: &LiftProblem, stop_at_first: bool) -> (Vec<Assignment>, Vec<String>) {
    let mut s = Search { problem: p, lines: header(p), stop_at_first, found: Vec::new() };
    let (mut bound, line) = normalization(p);
    s.lines.push(line);
    s.dfs(&mut bound, 0);
    (s.found, s.lines)
}

/// Exhaustive search; stops at the first solution.
pub fn search_lift(p: &LiftProblem) -> LiftResult {
    let (found, mut lines) = run(p, true);
    let outcome = match found.into_iter().next() {
        Some(a) => {
            lines.push("result feasible".to_string());
            LiftOutcome::Feasible(a)
        }
        None => {
            lines.push("result infeasible".to_string());
            LiftOutcome::Infeasible
        }
    };
    let mut certificate = String::new();
    for l in lines {
        let _ = writeln!(certificate, "{l}");
    }
    LiftResult { outcome, certificate }
}

/// Every normalized solution.
pub fn all_solutions(p: &LiftProblem) -> Vec<Assignment> {
    run(p, false).0
}

/// A unimodular `U` with `U·a = (1, 0)` and `φ·U⁻¹ = (1, 0)`, for primitive
/// `a` and `φ(a) = 1`. Returns `(U, U⁻¹)`.
pub fn normalizing_matrix(a: V2, phi: V2) -> Option<(Mat2, Mat2)> {
    if !is_primitive(a) || dot(phi, a) != 1 {
        return None;
    }
    // Columns of U⁻¹ are a and a vector c with φ(c) = 0 and det = 1.
    let c = [-phi[1], phi[0]];
    let det = a[0] * c[1] - a[1] * c[0];
    // det = φ(a) = 1 by construction.
    debug_assert_eq!(det, 1);
    let inv = [[a[0], c[0]], [a[1], c[1]]];
    let u = [[c[1], -c[0]], [-a[1], a[0]]];
    Some((u, inv))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReplayError {
    #[error("line {line}: {msg}")]
    Bad { line: usize, msg: String },
    #[error("certificate ends without a result line")]
    Truncated,
}

fn bad(line: usize, msg: impl Into<String>) -> ReplayError {
    ReplayError::Bad { line: line + 1, msg: msg.into() }
}

/// Re-derives every step of a certificate. Returns the problem it encodes and
/// whether it claims infeasibility.
pub fn replay(certificate: &str) -> Result<(LiftProblem, LiftOutcome), ReplayError> {
    // Anything before the header (such as a verdict line) is ignored.
    let start = certificate.lines().position(|l| l.starts_with("lift-certificate")).unwrap_or(0);
    let lines: Vec<(usize, usize, &str)> = certificate
        .lines()
        .enumerate()
        .skip(start)
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(n, l)| {
            let depth = (l.len() - l.trim_start().len()) / 2;
            (n, depth, l.trim())
        })
        .collect();
    let mut it = 0;
    let mut next = |want: &str| -> Result<(usize, &str), ReplayError> {
        let (n, _, l) = *lines.get(it).ok_or(ReplayError::Truncated)?;
        it += 1;
        l.strip_prefix(want).map(|r| (n, r.trim())).ok_or_else(|| bad(n, format!("expected `{want}`")))
    };
    let (n, v) = next("lift-certificate")?;
    if v != "1" {
        return Err(bad(n, "unknown version"));
    }
    let (n, mode) = next("mode")?;
    let mode = match mode {
        "exact" => SignMode::Exact,
        "signed" => SignMode::UpToSign,
        _ => return Err(bad(n, "unknown mode")),
    };
    let (n, b) = next("box")?;
    let search_box: i64 = b.parse().map_err(|_| bad(n, "bad box"))?;
    let mut pattern = [[0i64; 3]; 3];
    for (j, row) in pattern.iter_mut().enumerate() {
        let (n, rest) = next("pattern")?;
        let mut parts = rest.split_whitespace();
        if parts.next() != Some(NAMES[3 + j]) {
            return Err(bad(n, "pattern rows out of order"));
        }
        for (i, cell) in row.iter_mut().enumerate() {
            let kv = parts.next().ok_or_else(|| bad(n, "short pattern"))?;
            let (k, v) = kv.split_once('=').ok_or_else(|| bad(n, "bad pattern entry"))?;
            if k != NAMES[i] {
                return Err(bad(n, "pattern columns out of order"));
            }
            *cell = v.parse().map_err(|_| bad(n, "bad pattern value"))?;
        }
    }
    let problem = LiftProblem { pattern, mode, search_box };
    let (n, norm) = next("normalize")?;
    let (mut bound, expected) = normalization(&problem);
    if format!("normalize {norm}") != expected {
        return Err(bad(n, format!("normalization should read `{expected}`")));
    }
    if bound[3].is_some() && problem.pattern[0][0] != 1 && problem.mode == SignMode::Exact {
        return Err(bad(n, "phi1 can only be normalized when phi1(a) = 1"));
    }
    let body: Vec<(usize, usize, &str)> = lines[it..].to_vec();
    let (last_n, last_depth, last) = *body.last().ok_or(ReplayError::Truncated)?;
    if last_depth != 0 || !last.starts_with("result ") {
        return Err(ReplayError::Truncated);
    }
    let body = &body[..body.len() - 1];
    let mut pos = 0;
    let found = replay_node(&problem, body, &mut pos, 0, &mut bound)?;
    if pos != body.len() {
        return Err(bad(body[pos].0, "unexpected line"));
    }
    let outcome = match (last, found) {
        ("result infeasible", None) => LiftOutcome::Infeasible,
        ("result feasible", Some(a)) => LiftOutcome::Feasible(a),
        _ => return Err(bad(last_n, "result does not follow from the steps")),
    };
    Ok((problem, outcome))
}

fn parse_step(n: usize, rest: &str) -> Result<(usize, Option<V2>, Rule, &str), ReplayError> {
    // `<var>[=<v>] <rule>[: <detail>]`
    let (head, detail) = rest.split_once(": ").unwrap_or((rest, ""));
    let (var, rule) = head.split_once(' ').ok_or_else(|| bad(n, "missing rule"))?;
    let (name, value) = match var.split_once('=') {
        Some((name, v)) => (name, Some(parse_v(v).ok_or_else(|| bad(n, "bad vector"))?)),
        None => (var, None),
    };
    let x = var_index(name).ok_or_else(|| bad(n, format!("unknown variable `{name}`")))?;
    let rule = Rule::parse(rule).ok_or_else(|| bad(n, format!("unknown rule `{rule}`")))?;
    Ok((x, value, rule, detail))
}

/// Replays the steps at one depth; returns a found assignment if the branch
/// ends feasible, `None` if every path through it ends dead.
fn replay_node(
    p: &LiftProblem,
    body: &[(usize, usize, &str)],
    pos: &mut usize,
    depth: usize,
    bound: &mut [Option<V2>; 6],
) -> Result<Option<Assignment>, ReplayError> {
    let saved = *bound;
    let result = replay_steps(p, body, pos, depth, bound);
    *bound = saved;
    result
}

fn verify_rule(p: &LiftProblem, n: usize, x: usize, rule: &Rule, bound: &[Option<V2>; 6]) -> Result<Vec<V2>, ReplayError> {
    if bound[x].is_some() {
        return Err(bad(n, format!("{} is already bound", NAMES[x])));
    }
    match *rule {
        Rule::Solve(q1, q2) => {
            let cons: Vec<usize> = p.constraints(x).iter().map(|c| c.0).collect();
            for q in [q1, q2] {
                if !cons.contains(&q) || bound[q].is_none() {
                    return Err(bad(n, format!("{} is not a bound partner", NAMES[q])));
                }
            }
            let (u, v) = (bound[q1].unwrap(), bound[q2].unwrap());
            if u[0] * v[1] - u[1] * v[0] == 0 {
                return Err(bad(n, "partners are dependent"));
            }
        }
        Rule::Kernel(q) => {
            let ok = x < 3 && bound[q].is_some_and(|w| w != [0, 0]) && p.constraints(x).iter().any(|(r, vals)| *r == q && vals == &[0]);
            if !ok {
                return Err(bad(n, "kernel rule does not apply"));
            }
        }
        Rule::Scan => {}
    }
    Ok(survivors(&candidates(p, x, bound, rule)))
}

fn replay_steps(
    p: &LiftProblem,
    body: &[(usize, usize, &str)],
    pos: &mut usize,
    depth: usize,
    bound: &mut [Option<V2>; 6],
) -> Result<Option<Assignment>, ReplayError> {
    while *pos < body.len() {
        let (n, d, line) = body[*pos];
        if d != depth {
            return Err(bad(n, "unexpected indentation"));
        }
        *pos += 1;
        let (kind, rest) = line.split_once(' ').ok_or_else(|| bad(n, "empty step"))?;
        match kind {
            "force" => {
                let (x, v, rule, _) = parse_step(n, rest)?;
                let v = v.ok_or_else(|| bad(n, "force needs a value"))?;
                let surv = verify_rule(p, n, x, &rule, bound)?;
                if surv != [v] {
                    return Err(bad(n, format!("rule yields {:?}, not only {}", surv, fmt_v(v))));
                }
                bound[x] = Some(v);
            }
            "dead" => {
                let (x, _, rule, detail) = parse_step(n, rest)?;
                let surv = verify_rule(p, n, x, &rule, bound)?;
                if !surv.is_empty() {
                    return Err(bad(n, format!("{} still has candidates {:?}", NAMES[x], surv)));
                }
                let want = dead_detail(p, x, bound, &rule);
                if detail != want {
                    return Err(bad(n, format!("reasons should read `{want}`")));
                }
                return Ok(None);
            }
            "choose" => {
                let (x, _, rule, detail) = parse_step(n, rest)?;
                let listed: Vec<V2> = detail.split_whitespace().map(parse_v).collect::<Option<_>>().ok_or_else(|| bad(n, "bad candidate list"))?;
                let surv = verify_rule(p, n, x, &rule, bound)?;
                if surv != listed {
                    return Err(bad(n, format!("rule yields {:?}", surv)));
                }
                for v in listed {
                    let (cn, cd, case) = *body.get(*pos).ok_or(ReplayError::Truncated)?;
                    let want = format!("case {}={}", NAMES[x], fmt_v(v));
                    if cd != depth || case != want {
                        return Err(bad(cn, format!("expected `{want}`")));
                    }
                    *pos += 1;
                    bound[x] = Some(v);
                    if let Some(a) = replay_node(p, body, pos, depth + 1, bound)? {
                        return Ok(Some(a));
                    }
                    bound[x] = None;
                }
                return Ok(None);
            }
            "feasible" => {
                let mut vals = [None; 6];
                for kv in rest.split_whitespace() {
                    let (k, v) = kv.split_once('=').ok_or_else(|| bad(n, "bad assignment"))?;
                    let x = var_index(k).ok_or_else(|| bad(n, "unknown variable"))?;
                    vals[x] = Some(parse_v(v).ok_or_else(|| bad(n, "bad vector"))?);
                }
                if vals != *bound {
                    return Err(bad(n, "assignment differs from the bindings"));
                }
                for x in 0..3 {
                    if let Some(f) = check(p, x, bound[x].unwrap(), bound) {
                        return Err(bad(n, f));
                    }
                }
                if *pos < body.len() && body[*pos].2.starts_with("signs ") {
                    *pos += 1;
                }
                return Ok(Some(Assignment::from_bindings(bound)));
            }
            _ => return Err(bad(n, format!("unknown step `{kind}`"))),
        }
        if *pos < body.len() && body[*pos].1 < depth {
            break;
        }
    }
    Err(ReplayError::Truncated)
}

#[derive(Debug, Error)]
pub enum LiftCheckError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Glue(#[from] GlueError),
    #[error("module is not built on the disk with six marked points")]
    WrongSurface,
}

/// Zero/nonzero table of the three attachment maps on `K1, K2, K3`, next to
/// the pattern's.
#[derive(Clone, Debug, Serialize)]
pub struct Mod2Report {
    /// `computed[j][i]`: the image of unknown `i` under map `j` is nonzero.
    pub computed: [[bool; 3]; 3],
    pub pattern: [[bool; 3]; 3],
}

impl Mod2Report {
    pub fn matches(&self) -> bool {
        self.computed == self.pattern
    }
}

pub fn mod2_consistency(p: &LiftProblem, m: &TqftModule) -> Result<Mod2Report, LiftCheckError> {
    if m.surface() != &MarkedSurface::disk(6).expect("valid") {
        return Err(LiftCheckError::WrongSurface);
    }
    let target = build_module(&MarkedSurface::disk(4).expect("valid"), 0)?;
    let chord = DividingSet::from_pairs(&MarkedSurface::disk(2).expect("valid"), vec![], &[(0, 1)], 0).expect("valid");
    let ks = [catalog::k1(), catalog::k2(), catalog::k3()];
    let mut computed = [[false; 3]; 3];
    for (j, row) in computed.iter_mut().enumerate() {
        let d = arc_attachment(6, j + 1)?;
        let src = build_module(&d.source, 0)?;
        let map = glue_map(&d, &src, &target)?;
        for (i, k) in ks.iter().enumerate() {
            if m.class_of(k)?.zero {
                continue;
            }
            let c = src.class_of(&k.disjoint_union(&chord))?;
            row[i] = !map.apply(&c.coords).is_zero();
        }
    }
    let pattern = p.pattern.map(|r| r.map(|v| v != 0));
    Ok(Mod2Report { computed, pattern })
}

/// Checks that `b ≡ αa + βd (mod 2)` forces `[K2] = α[K1] + β[K3]`, i.e.
/// that the reduction of a lift is compatible with the computed classes.
pub fn mod2_shadow(a: &Assignment, m: &TqftModule) -> Result<bool, LiftCheckError> {
    let c = |k: &DividingSet| m.class_of(k).map(|c| c.coords);
    let (c1, c2, c3) = (c(&catalog::k1())?, c(&catalog::k2())?, c(&catalog::k3())?);
    let r = |v: V2| [v[0].rem_euclid(2), v[1].rem_euclid(2)];
    let (va, vb, vd) = (r(a.vectors[0]), r(a.vectors[1]), r(a.vectors[2]));
    for al in 0..2 {
        for be in 0..2 {
            let comb = [(al * va[0] + be * vd[0]) % 2, (al * va[1] + be * vd[1]) % 2];
            if comb == vb {
                let mut want = m.zero_vector();
                if al == 1 {
                    want.xor_assign(&c1);
                }
                if be == 1 {
                    want.xor_assign(&c3);
                }
                return Ok(want == c2);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn attachment_pattern_is_infeasible() {
        let r = search_lift(&LiftProblem::attachments(4));
        assert!(r.is_infeasible());
        assert!(r.certificate.contains("dead phi3 from a,d: (1,1): phi3(b)=2 need 0"), "{}", r.certificate);
    }

    #[test]
    fn relaxed_pattern_is_feasible() {
        let r = search_lift(&LiftProblem::attachments(4).relaxed());
        match r.outcome {
            LiftOutcome::Feasible(a) => {
                assert_eq!(a.vectors, [[1, 0], [1, 1], [0, 1]]);
            }
            LiftOutcome::Infeasible => panic!("expected a solution"),
        }
    }

    #[test]
    fn certificates_replay() {
        for p in [LiftProblem::attachments(4), LiftProblem::attachments(8), LiftProblem::attachments(4).relaxed(), LiftProblem::degenerate(3)] {
            let r = search_lift(&p);
            let (q, outcome) = replay(&r.certificate).unwrap();
            assert_eq!(q, p);
            assert_eq!(outcome, r.outcome);
        }
    }

    #[test]
    fn tampered_certificate_rejected() {
        let r = search_lift(&LiftProblem::attachments(4));
        let bad = r.certificate.replace("force b=(1,1)", "force b=(1,2)");
        assert!(replay(&bad).is_err());
        let bad = r.certificate.replace("result infeasible", "result feasible");
        assert!(replay(&bad).is_err());
    }

    #[test]
    fn normalization_matrix() {
        let (u, inv) = normalizing_matrix([2, 3], [2, -1]).unwrap();
        let apply = |m: [[i64; 2]; 2], v: V2| [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]];
        assert_eq!(apply(u, [2, 3]), [1, 0]);
        // φ·U⁻¹ as a row vector.
        let phi = [2, -1];
        let row = [phi[0] * inv[0][0] + phi[1] * inv[1][0], phi[0] * inv[0][1] + phi[1] * inv[1][1]];
        assert_eq!(row, [1, 0]);
    }
}
