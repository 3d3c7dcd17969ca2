//! Machine checks of the flatness identities, the grading claims and the
//! Hilbert function equality, certified by Gröbner normal forms.
//!
//! Every membership check reduces an expression modulo one shared reduced
//! Gröbner basis of `J(2,P)`. A separate check for the depth-induction
//! bridge is not needed: it is the `lemma-dt*` sums plus `flat-basic`.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use crate::deformation::{DeformationContext, DeformedGenerator};
use crate::error::{Error, Result};
use crate::grading::{default_order, hat_degree, homogeneous_degree, truncated_hilbert, Homogeneity, MultiDegree};
use crate::letterplace::letterplace_generators;
use crate::poly::{buchberger, GroebnerBasis, GroebnerBudget, MonomialOrder, Polynomial, VariableId};
use crate::poset::{ElemId, RootedTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        }
    }
}

/// Outcome of one check instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    /// Element names, or `N=<degree>` for Hilbert comparisons.
    pub params: Vec<String>,
    pub verdict: Verdict,
    /// The nonzero normal form (or offending polynomial) on failure.
    pub witness: Option<Polynomial>,
    pub detail: Option<String>,
    pub elapsed: Duration,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Which checks `run_suite` performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// Specialization, homogeneity, degree formulas, `flat-basic`,
    /// `flat-p2`.
    Basic,
    /// Everything in `Basic`, the lemma families, relation lifts and the
    /// Hilbert comparison.
    Full,
}

/// Verdict counts for one check family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySummary {
    pub name: String,
    pub instances: usize,
    pub failures: usize,
    pub elapsed: Duration,
}

/// Groups reports by check name, preserving first-appearance order.
pub fn summarize(reports: &[CheckReport]) -> Vec<FamilySummary> {
    let mut out: Vec<FamilySummary> = Vec::new();
    for r in reports {
        let pos = match out.iter().position(|s| s.name == r.name) {
            Some(i) => i,
            None => {
                out.push(FamilySummary { name: r.name.clone(), instances: 0, failures: 0, elapsed: Duration::ZERO });
                out.len() - 1
            }
        };
        let s = &mut out[pos];
        s.instances += 1;
        s.failures += usize::from(!r.passed());
        s.elapsed += r.elapsed;
    }
    out
}

/// Checks against one tree and one generating set of `J(2,P)`.
#[derive(Debug)]
pub struct Verifier {
    ctx: DeformationContext,
    order: MonomialOrder,
    generators: Vec<DeformedGenerator>,
    budget: GroebnerBudget,
    basis: OnceLock<Result<GroebnerBasis>>,
}

fn x1(p: ElemId) -> Polynomial {
    Polynomial::var(VariableId::x1(p))
}

fn x2(p: ElemId) -> Polynomial {
    Polynomial::var(VariableId::x2(p))
}

impl Verifier {
    pub fn new(tree: RootedTree) -> Verifier {
        let ctx = DeformationContext::new(tree);
        let generators = ctx.j_ideal_generators();
        Verifier::build(ctx, generators)
    }

    /// Uses `generators` in place of the computed ones for the Gröbner basis,
    /// the per-generator checks and the relation lifts. Intended for
    /// negative controls.
    pub fn with_generators(tree: RootedTree, generators: Vec<DeformedGenerator>) -> Verifier {
        Verifier::build(DeformationContext::new(tree), generators)
    }

    fn build(ctx: DeformationContext, generators: Vec<DeformedGenerator>) -> Verifier {
        let order = default_order(ctx.tree());
        Verifier { ctx, order, generators, budget: GroebnerBudget::default(), basis: OnceLock::new() }
    }

    pub fn with_budget(mut self, budget: GroebnerBudget) -> Verifier {
        self.budget = budget;
        self.basis = OnceLock::new();
        self
    }

    pub fn tree(&self) -> &RootedTree {
        self.ctx.tree()
    }

    pub fn context(&self) -> &DeformationContext {
        &self.ctx
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn generators(&self) -> &[DeformedGenerator] {
        &self.generators
    }

    fn generator(&self, p: ElemId, q: ElemId) -> Result<&Polynomial> {
        self.generators
            .iter()
            .find(|g| g.lower == p && g.upper == q)
            .map(|g| &g.polynomial)
            .ok_or_else(|| Error::NotComparable(self.name(p), self.name(q)))
    }

    fn name(&self, e: ElemId) -> String {
        self.tree().name(e).to_string()
    }

    fn names(&self, es: &[ElemId]) -> Vec<String> {
        es.iter().map(|&e| self.name(e)).collect()
    }

    /// The reduced Gröbner basis of the generators, computed once.
    pub fn groebner_basis(&self) -> Result<&GroebnerBasis> {
        self.basis
            .get_or_init(|| {
                let polys: Vec<Polynomial> = self.generators.iter().map(|g| g.polynomial.clone()).collect();
                buchberger(&polys, &self.order, self.budget)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    fn membership(&self, name: &str, params: &[ElemId], f: Result<Polynomial>) -> Result<CheckReport> {
        let start = Instant::now();
        let nf = self.groebner_basis()?.normal_form(&f?)?;
        Ok(report(name, self.names(params), nf, None, start))
    }

    fn require_leq(&self, a: ElemId, b: ElemId) -> Result<()> {
        if self.tree().leq(a, b) {
            Ok(())
        } else {
            Err(Error::NotComparable(self.name(a), self.name(b)))
        }
    }

    /// Each generator specializes to its letterplace monomial when every
    /// parameter is set to zero.
    pub fn check_specialization(&self) -> CheckReport {
        let start = Instant::now();
        let monomials = letterplace_generators(self.tree().poset());
        if monomials.len() != self.generators.len() {
            return finish("specialization", vec![], Verdict::Fail, None, Some("generator count differs".into()), start);
        }
        for (g, l) in self.generators.iter().zip(&monomials) {
            let d = &g.polynomial.specialize_u_to_zero() - &l.polynomial();
            if !d.is_zero() {
                return report("specialization", self.names(&[g.lower, g.upper]), d, None, start);
            }
        }
        finish("specialization", vec![], Verdict::Pass, None, None, start)
    }

    /// Every generator is homogeneous for the fine grading.
    pub fn check_homogeneity(&self) -> Result<Vec<CheckReport>> {
        self.generators
            .iter()
            .map(|g| {
                let start = Instant::now();
                let params = self.names(&[g.lower, g.upper]);
                Ok(match homogeneous_degree(self.tree(), &g.polynomial)? {
                    Homogeneity::NotHomogeneous(..) => finish("homogeneity", params, Verdict::Fail, Some(g.polynomial.clone()), None, start),
                    _ => finish("homogeneity", params, Verdict::Pass, None, None, start),
                })
            })
            .collect()
    }

    /// `S_p(b)*c2 - b2*S_p(c)` for `p <= b`, `p <= c`.
    pub fn check_flat_basic(&self, p: ElemId, b: ElemId, c: ElemId) -> Result<CheckReport> {
        self.require_leq(p, b)?;
        self.require_leq(p, c)?;
        let ctx = &self.ctx;
        let f = (|| Ok(&ctx.s_op(p, b)? * &x2(c) - &(&x2(b) * &ctx.s_op(p, c)?)))();
        self.membership("flat-basic", &[p, b, c], f)
    }

    /// `a1*T(b) - T(a)*R(a,b)*b1` for `a <= b`.
    pub fn check_flat_p2(&self, a: ElemId, b: ElemId) -> Result<CheckReport> {
        self.require_leq(a, b)?;
        let ctx = &self.ctx;
        let f = (|| Ok(&x1(a) * &ctx.t_full(b) - &(&(&ctx.t_full(a) * &ctx.cover_product_r(a, b)?) * &x1(b))))();
        self.membership("flat-p2", &[a, b], f)
    }

    /// The identity families behind the flatness proof, over all admissible
    /// tuples:
    /// `lemma-ts`: `S_pT_p(q)*b2 - T_p(q)*S_p(b)`, `q` a sibling of or equal
    /// to `p`, `b >= p`;
    /// `lemma-stt`: `S_pT_p(q)*T_p(r) - T_p(q)*S_pT_p(r)`, `q, r` siblings of
    /// or equal to `p`;
    /// `lemma-dt1..3`: `sum_x D(a)^{bc}_x T_d(x)`, `sum_x D(a)^{bc}_x T_a(x)`
    /// and `sum_x D(a)^{ab}_x T_c(x)` over the children `x` of `a`, for
    /// distinct children `b, c, d`.
    pub fn check_lemma_identities(&self) -> Result<Vec<CheckReport>> {
        let tree = self.tree();
        let ctx = &self.ctx;
        let ext = tree.linear_extension().to_vec();
        let mut out = Vec::new();
        let with_self = |p: ElemId| -> Vec<ElemId> {
            let mut v = vec![p];
            v.extend(tree.siblings(p));
            v
        };
        for &p in &ext {
            for q in with_self(p) {
                let st = ctx.st_entry(p, q)?;
                let t = ctx.t_sub(p, q)?;
                for &b in &ext {
                    if tree.leq(p, b) {
                        let f = Ok(&st * &x2(b) - &(&t * &ctx.s_op(p, b)?));
                        out.push(self.membership("lemma-ts", &[p, q, b], f)?);
                    }
                }
                for r in with_self(p) {
                    let f = Ok(&st * &ctx.t_sub(p, r)? - &(&t * &ctx.st_entry(p, r)?));
                    out.push(self.membership("lemma-stt", &[p, q, r], f)?);
                }
            }
        }
        for &a in &ext {
            let kids = tree.children(a).to_vec();
            let sum = |cols: [ElemId; 2], t_of: &dyn Fn(ElemId) -> Result<Polynomial>| -> Result<Polynomial> {
                let mut acc = Polynomial::zero();
                for &x in &kids {
                    acc += &(&ctx.generalized_minor_elems(a, &cols, &[x])? * &t_of(x)?);
                }
                Ok(acc)
            };
            for (i, &b) in kids.iter().enumerate() {
                for &c in &kids[i + 1..] {
                    for &d in kids.iter().filter(|&&d| d != b && d != c) {
                        let f = sum([b, c], &|x| ctx.t_sub(d, x));
                        out.push(self.membership("lemma-dt1", &[a, b, c, d], f)?);
                    }
                    let f = sum([b, c], &|x| ctx.t_sub(a, x));
                    out.push(self.membership("lemma-dt2", &[a, b, c], f)?);
                }
                for &c in kids.iter().filter(|&&c| c != b) {
                    let f = sum([a, b], &|x| ctx.t_sub(c, x));
                    out.push(self.membership("lemma-dt3", &[a, b, c], f)?);
                }
            }
        }
        Ok(out)
    }

    fn lift_report(&self, name: &str, params: &[ElemId], f: Polynomial) -> Result<CheckReport> {
        let start = Instant::now();
        let nf = self.groebner_basis()?.normal_form(&f)?;
        if !nf.is_zero() {
            return Ok(report(name, self.names(params), nf, None, start));
        }
        let free = f.u_free_part();
        let detail = (!free.is_zero()).then(|| "terms without a parameter".to_string());
        Ok(report(name, self.names(params), free, detail, start))
    }

    /// `c2*g(a,b) - b2*g(a,c)` for `a <= b, c` and `b1*g(a,c) - a1*g(b,c)`
    /// for `a <= b <= c`: zero normal form and every term divisible by a
    /// parameter.
    pub fn check_relation_lifts(&self) -> Result<Vec<CheckReport>> {
        let tree = self.tree();
        let ext = tree.linear_extension().to_vec();
        let mut out = Vec::new();
        for &a in &ext {
            for &b in &ext {
                for &c in &ext {
                    if tree.leq(a, b) && tree.leq(a, c) {
                        let f = &x2(c) * self.generator(a, b)? - &x2(b) * self.generator(a, c)?;
                        out.push(self.lift_report("lift-type1", &[a, b, c], f)?);
                    }
                    if tree.leq(a, b) && tree.leq(b, c) {
                        let f = &x1(b) * self.generator(a, c)? - &x1(a) * self.generator(b, c)?;
                        out.push(self.lift_report("lift-type2", &[a, b, c], f)?);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `deg T(p) = p1 + p^`, `deg S_p(q) = q2 - p^`, `deg S_qT_q(p) = p1 +
    /// p^ - q^` for siblings, `deg D(p)^q = q^ - p^` for children and `deg
    /// D(p)^p = p2 - p^`.
    pub fn check_degree_formulas(&self) -> Result<Vec<CheckReport>> {
        let tree = self.tree();
        let ctx = &self.ctx;
        let n = tree.len();
        let unit = |place, p| MultiDegree::unit(n, place, p);
        let mut out = Vec::new();
        let mut push = |name: &str, params: &[ElemId], f: Polynomial, want: MultiDegree| -> Result<()> {
            let start = Instant::now();
            let verdict = match homogeneous_degree(tree, &f)? {
                Homogeneity::Zero => Verdict::Pass,
                Homogeneity::Homogeneous(d) if d == want => Verdict::Pass,
                _ => Verdict::Fail,
            };
            let witness = (verdict == Verdict::Fail).then_some(f);
            out.push(finish(name, self.names(params), verdict, witness, None, start));
            Ok(())
        };
        for &p in tree.linear_extension() {
            let hp = hat_degree(tree, p);
            push("degree-T", &[p], ctx.t_full(p), &unit(1, p) + &hp)?;
            for &q in tree.linear_extension() {
                if tree.leq(p, q) {
                    push("degree-S", &[p, q], ctx.s_op(p, q)?, &unit(2, q) - &hp)?;
                }
            }
            for q in tree.siblings(p) {
                push("degree-ST", &[q, p], ctx.st_entry(q, p)?, &(&unit(1, p) + &hp) - &hat_degree(tree, q))?;
            }
            for &q in tree.children(p) {
                push("degree-D", &[p, q], ctx.minor_d(p, q)?, &hat_degree(tree, q) - &hp)?;
            }
            push("degree-D", &[p, p], ctx.minor_d(p, p)?, &unit(2, p) - &hp)?;
        }
        Ok(out)
    }

    /// Truncated Hilbert functions of `(L)` and `J` agree up to weighted
    /// degree `max_degree` under the positivity witness.
    pub fn compare_hilbert(&self, max_degree: u64) -> Result<CheckReport> {
        let start = Instant::now();
        let l: Vec<Polynomial> = letterplace_generators(self.tree().poset()).iter().map(|g| g.polynomial()).collect();
        let hl = truncated_hilbert(&l, &self.order, max_degree, self.budget)?;
        let hj = crate::grading::count_standard_monomials(&self.groebner_basis()?.dense_leads(), self.order.weights(), max_degree);
        let verdict = if hl == hj { Verdict::Pass } else { Verdict::Fail };
        let detail = format!("L {hl:?} J {hj:?}");
        Ok(finish("hilbert", vec![format!("N={max_degree}")], verdict, None, Some(detail), start))
    }

    /// Hilbert vectors for `(L)` and `J`.
    pub fn hilbert_vectors(&self, max_degree: u64) -> Result<(Vec<u64>, Vec<u64>)> {
        let l: Vec<Polynomial> = letterplace_generators(self.tree().poset()).iter().map(|g| g.polynomial()).collect();
        let hl = truncated_hilbert(&l, &self.order, max_degree, self.budget)?;
        let hj = crate::grading::count_standard_monomials(&self.groebner_basis()?.dense_leads(), self.order.weights(), max_degree);
        Ok((hl, hj))
    }

    pub fn check_all_flat_basic(&self) -> Result<Vec<CheckReport>> {
        let ext = self.tree().linear_extension().to_vec();
        let mut out = Vec::new();
        for &p in &ext {
            for &b in &ext {
                for &c in &ext {
                    if self.tree().leq(p, b) && self.tree().leq(p, c) {
                        out.push(self.check_flat_basic(p, b, c)?);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn check_all_flat_p2(&self) -> Result<Vec<CheckReport>> {
        self.tree().poset().comparable_pairs().into_iter().map(|(a, b)| self.check_flat_p2(a, b)).collect()
    }

    pub fn run_suite(&self, suite: Suite, max_degree: u64) -> Result<Vec<CheckReport>> {
        let mut out = vec![self.check_specialization()];
        out.extend(self.check_homogeneity()?);
        out.extend(self.check_degree_formulas()?);
        out.extend(self.check_all_flat_basic()?);
        out.extend(self.check_all_flat_p2()?);
        if suite == Suite::Full {
            out.extend(self.check_lemma_identities()?);
            out.extend(self.check_relation_lifts()?);
            out.push(self.compare_hilbert(max_degree)?);
        }
        Ok(out)
    }
}

fn finish(name: &str, params: Vec<String>, verdict: Verdict, witness: Option<Polynomial>, detail: Option<String>, start: Instant) -> CheckReport {
    CheckReport { name: name.to_string(), params, verdict, witness, detail, elapsed: start.elapsed() }
}

/// PASS iff `witness` is zero.
fn report(name: &str, params: Vec<String>, witness: Polynomial, detail: Option<String>, start: Instant) -> CheckReport {
    if witness.is_zero() {
        finish(name, params, Verdict::Pass, None, detail, start)
    } else {
        finish(name, params, Verdict::Fail, Some(witness), detail, start)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use crate::poset::Poset;

    fn tree(dsl: &str) -> RootedTree {
        Poset::parse(dsl).unwrap().as_rooted_tree().unwrap()
    }

    fn ids<const N: usize>(t: &RootedTree, names: [&str; N]) -> [ElemId; N] {
        names.map(|n| t.id(n).unwrap())
    }

    #[test]
    fn chain_hand_factorizations() {
        let t = tree("a < b\nb < c\nc < d");
        let v = Verifier::new(t.clone());
        let [a, b, c, _d] = ids(&t, ["a", "b", "c", "d"]);
        // S_a(b)*c2 - b2*S_a(c) = u[a,b]*(c1*c2 - b2*u[b,c]*d1)
        let ctx = v.context();
        let lhs = &ctx.s_op(a, b).unwrap() * &x2(c) - &(&x2(b) * &ctx.s_op(a, c).unwrap());
        let want = parse_polynomial("u[a,b]*c1*c2 - u[a,b]*b2*u[b,c]*d1", &t).unwrap();
        assert_eq!(lhs, want);
        assert!(v.check_flat_basic(a, b, c).unwrap().passed());
        assert!(v.check_flat_basic(b, b, b).unwrap().passed());
        // a1*T(b) - T(a)*R(a,b)*b1 = u[a,b]*(a1*a2 - u[0,a]*b1)
        let p2 = &x1(a) * &ctx.t_full(b) - &(&(&ctx.t_full(a) * &ctx.cover_product_r(a, b).unwrap()) * &x1(b));
        assert_eq!(p2, parse_polynomial("u[a,b]*a1*a2 - u[a,b]*u[0,a]*b1", &t).unwrap());
        assert!(v.check_flat_p2(a, b).unwrap().passed());
        assert!(matches!(v.check_flat_p2(b, a), Err(Error::NotComparable(..))));
    }

    #[test]
    fn small_trees_pass_full_suite() {
        for dsl in ["elem a", "a < b", "a < b\nb < c", "a < b\na < c", "a < b\na < c\na < d"] {
            let v = Verifier::new(tree(dsl));
            let reports = v.run_suite(Suite::Full, 4).unwrap();
            let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).collect();
            assert!(failed.is_empty(), "{dsl}: {failed:?}");
        }
    }

    #[test]
    fn star3_has_every_lemma_family() {
        let v = Verifier::new(tree("a < b\na < c\na < d"));
        let reports = v.check_lemma_identities().unwrap();
        let names: Vec<String> = summarize(&reports).into_iter().map(|s| s.name).collect();
        assert_eq!(names, ["lemma-ts", "lemma-stt", "lemma-dt1", "lemma-dt2", "lemma-dt3"]);
    }

    fn mutated(dsl: &str, pick: (&str, &str), f: impl Fn(&Polynomial) -> Polynomial) -> Verifier {
        let t = tree(dsl);
        let (p, q) = (t.id(pick.0).unwrap(), t.id(pick.1).unwrap());
        let mut gens = DeformationContext::new(t.clone()).j_ideal_generators();
        for g in &mut gens {
            if (g.lower, g.upper) == (p, q) {
                g.polynomial = f(&g.polynomial);
            }
        }
        Verifier::with_generators(t, gens)
    }

    #[test]
    fn specialization_catches_constant_perturbation() {
        let t = tree("a < b\nb < c");
        let v = mutated("a < b\nb < c", ("b", "b"), |g| g + &parse_polynomial("u[a,b]", &t).unwrap());
        assert!(v.check_specialization().passed());
        let v = mutated("a < b\nb < c", ("b", "b"), |g| g + &Polynomial::one());
        let r = v.check_specialization();
        assert!(!r.passed());
        assert_eq!(r.witness, Some(Polynomial::one()));
    }

    #[test]
    fn sign_flip_is_detected() {
        let t = tree("a < b\nb < c");
        let v = mutated("a < b\nb < c", ("b", "b"), |g| {
            let lead = parse_polynomial("b1*b2", &t).unwrap();
            &lead + &(&lead - g)
        });
        let reports = v.run_suite(Suite::Full, 4).unwrap();
        assert!(reports.iter().any(|r| !r.passed() && r.witness.as_ref().is_some_and(|w| !w.is_zero())));
    }
}
