//! The verify subcommand: runs one of the identity suites over the
//! built-in fixtures or over user files, printing one line per case and
//! failing the process when any exact equality breaks.

use std::io::Write;
use std::path::PathBuf;

use multifan::cohomology::{spanning_set, XiClass};
use multifan::dh::{count_via_todd, rigidity_check, volume, MultiPolytope};
use multifan::fixtures;
use multifan::morelli::{
    corollary_main_reduction, mu_todd, sample_generic_e, sample_generic_e_for_cones,
    theorem_main_sides, verify_lemma_wevj, verify_mu_additivity, verify_td_additivity,
};
use multifan::rat::{fmt_rat, rat, Int, Rat};
use multifan::sample::Sampler;
use multifan::{HRepPolytope, Simplex, SimplicialMultiFan};

use crate::{load_fan, load_polytope, load_xi, CmdError, CmdResult};

struct Case {
    name: String,
    fan: SimplicialMultiFan,
    xi: XiClass,
    polytope: Option<HRepPolytope>,
}

fn fixture_cases() -> Vec<Case> {
    let mut cases = Vec::new();
    for (name, poly) in [
        ("square", fixtures::square_polytope()),
        ("simplex", fixtures::simplex_polytope()),
        ("triangle", fixtures::triangle_polytope()),
    ] {
        let (fan, levels) = poly.normal_fan().expect("fixtures are valid");
        cases.push(Case {
            name: name.into(),
            fan,
            xi: XiClass::new(levels),
            polytope: Some(poly),
        });
    }
    cases.push(Case {
        name: "mf1".into(),
        fan: fixtures::mf1(),
        xi: fixtures::mf1_xi(),
        polytope: None,
    });
    cases
}

fn user_cases(
    fan: &Option<PathBuf>,
    xi: &Option<PathBuf>,
    polytope: &Option<PathBuf>,
) -> Result<Option<Vec<Case>>, CmdError> {
    match (fan, polytope) {
        (None, None) => Ok(None),
        (Some(f), None) => {
            let named = load_fan(f)?;
            let xi_path = xi.as_ref().ok_or_else(|| CmdError::input("missing --xi"))?;
            let levels = load_xi(xi_path, &named)?;
            Ok(Some(vec![Case {
                name: f.display().to_string(),
                fan: named.fan,
                xi: levels,
                polytope: None,
            }]))
        }
        (None, Some(p)) => {
            let poly = load_polytope(p)?;
            let (fan, levels) = poly.normal_fan()?;
            Ok(Some(vec![Case {
                name: p.display().to_string(),
                fan,
                xi: XiClass::new(levels),
                polytope: Some(poly),
            }]))
        }
        _ => Err(CmdError::input("give at most one of --fan or --polytope")),
    }
}

struct Tally {
    passed: usize,
    failed: usize,
}

impl Tally {
    fn new() -> Self {
        Tally {
            passed: 0,
            failed: 0,
        }
    }

    fn record(&mut self, out: &mut dyn Write, label: &str, ok: bool, detail: &str) {
        if ok {
            self.passed += 1;
            let _ = writeln!(out, "ok   {label} {detail}");
        } else {
            self.failed += 1;
            let _ = writeln!(out, "FAIL {label} {detail}");
        }
    }

    fn finish(self, out: &mut dyn Write) -> CmdResult {
        let total = self.passed + self.failed;
        let _ = writeln!(out, "passed {}/{}", self.passed, total);
        if self.failed > 0 {
            Err(CmdError::violation(format!(
                "{} case(s) failed",
                self.failed
            )))
        } else {
            Ok(())
        }
    }
}

fn random_xi(fan: &SimplicialMultiFan, seed: u64) -> XiClass {
    let mut sampler = Sampler::new(seed.wrapping_mul(0x9e3779b9).wrapping_add(17));
    XiClass::new(sampler.vector(fan.n_edges()))
}

fn suite_main(
    out: &mut dyn Write,
    cases: &[Case],
    seed: u64,
    trials: u64,
    samples: u64,
) -> CmdResult {
    let mut tally = Tally::new();
    for case in cases {
        let fan = &case.fan;
        for k in 1..=fan.rank() {
            let family = spanning_set(fan, k);
            for e_seed in 0..2u64 {
                let e = sample_generic_e(fan, k, seed + e_seed);
                for (idx, x) in family.iter().enumerate() {
                    let mut worst = Rat::from_integer(Int::from(0));
                    let mut ok = true;
                    for t in 0..trials {
                        let xi = random_xi(fan, seed + t);
                        let sides = theorem_main_sides(fan, x, &xi, &e)
                            .map_err(|e| CmdError::input(e.to_string()))?;
                        if !sides.holds() {
                            ok = false;
                            worst = sides.residual();
                        }
                    }
                    tally.record(
                        out,
                        &format!("{} k={k} class={idx} plane={e_seed}", case.name),
                        ok,
                        &format!("residual={}", fmt_rat(&worst)),
                    );
                }
            }
            // constancy of the decomposition sum across planes
            let x = &family[0];
            let xi = random_xi(fan, seed);
            let mut values = Vec::new();
            for s in 0..samples {
                let e = sample_generic_e(fan, k, seed + 100 + s);
                let sides = theorem_main_sides(fan, x, &xi, &e)
                    .map_err(|e| CmdError::input(e.to_string()))?;
                values.push(sides.rhs);
            }
            let constant = values.windows(2).all(|w| w[0] == w[1]);
            tally.record(
                out,
                &format!("{} k={k} constancy", case.name),
                constant,
                &format!("samples={samples}"),
            );
        }
    }
    tally.finish(out)
}

fn suite_corollary(out: &mut dyn Write, cases: &[Case], seed: u64) -> CmdResult {
    let mut tally = Tally::new();
    for case in cases {
        let fan = &case.fan;
        for k in 1..=fan.rank() {
            for e_seed in 0..2u64 {
                let e = sample_generic_e(fan, k, seed + e_seed);
                for (idx, x) in spanning_set(fan, k).iter().enumerate() {
                    let reduced = corollary_main_reduction(fan, x, &e)
                        .map_err(|e| CmdError::input(e.to_string()))?;
                    let ok = reduced.iter().all(num_is_zero);
                    tally.record(
                        out,
                        &format!("{} k={k} class={idx} plane={e_seed}", case.name),
                        ok,
                        "",
                    );
                }
            }
        }
    }
    tally.finish(out)
}

fn num_is_zero(r: &Rat) -> bool {
    *r == rat(0)
}

fn suite_rigidity(out: &mut dyn Write, cases: &[Case], order: i64) -> CmdResult {
    let mut tally = Tally::new();
    for case in cases {
        let fan = &case.fan;
        let genus = fan
            .todd_genus()
            .map_err(|e| CmdError::input(e.to_string()))?;
        let depth = order.max(fan.rank() as i64) as usize;
        let ok = rigidity_check(fan, depth).map_err(|e| CmdError::input(e.to_string()))?;
        tally.record(
            out,
            &format!("{} rigidity", case.name),
            ok,
            &format!("constant={genus} order={depth}"),
        );
    }
    tally.finish(out)
}

fn suite_counts(out: &mut dyn Write, cases: &[Case]) -> CmdResult {
    let mut tally = Tally::new();
    for case in cases {
        let fan = &case.fan;
        let po = MultiPolytope::new(fan, case.xi.clone())
            .map_err(|e| CmdError::input(e.to_string()))?;
        for k in fan.all_faces() {
            let scanned = po
                .count_points(k)
                .map_err(|e| CmdError::input(e.to_string()))?;
            let todd = count_via_todd(fan, &case.xi, k)
                .map_err(|e| CmdError::input(e.to_string()))?;
            let mut ok = todd == rat(scanned);
            let mut detail = format!("count={scanned} via_todd={}", fmt_rat(&todd));
            if let Some(poly) = &case.polytope {
                let brute = poly
                    .brute_count_face(k)
                    .map_err(|e| CmdError::input(e.to_string()))?;
                ok = ok && brute == scanned;
                detail.push_str(&format!(" brute={brute}"));
            }
            tally.record(out, &format!("{} face={k}", case.name), ok, &detail);
        }
    }
    tally.finish(out)
}

type Cone = Vec<Vec<Int>>;

fn suite_additivity(out: &mut dyn Write, seed: u64, order: i64) -> CmdResult {
    let iv = |v: &[i64]| -> Vec<Int> { v.iter().map(|&x| Int::from(x)).collect() };
    let splits: Vec<(&str, Cone, Vec<Cone>)> = vec![
        (
            "quadrant",
            vec![iv(&[1, 0]), iv(&[0, 1])],
            vec![
                vec![iv(&[1, 0]), iv(&[1, 1])],
                vec![iv(&[1, 1]), iv(&[0, 1])],
            ],
        ),
        (
            "singular",
            vec![iv(&[1, 0]), iv(&[1, 2])],
            vec![
                vec![iv(&[1, 0]), iv(&[1, 1])],
                vec![iv(&[1, 1]), iv(&[1, 2])],
            ],
        ),
    ];
    let mut tally = Tally::new();
    for (name, parent, children) in &splits {
        let all: Vec<Vec<Vec<Int>>> = std::iter::once(parent.clone())
            .chain(children.iter().cloned())
            .collect();
        for s in 0..3u64 {
            let e = sample_generic_e_for_cones(2, &all, 2, seed + s);
            let ok = verify_mu_additivity(parent, children, &e)
                .map_err(|e| CmdError::input(e.to_string()))?;
            tally.record(out, &format!("{name} mu plane={s}"), ok, "");
        }
        let mut sampler = Sampler::new(seed + 7);
        let v = sampler.find(2, |v| {
            crate::verify::direction_ok(&all, v)
        });
        for ord in 0..=order {
            let ok = verify_td_additivity(parent, children, &v, ord)
                .map_err(|e| CmdError::input(e.to_string()))?;
            tally.record(out, &format!("{name} td order={ord}"), ok, "");
        }
    }
    tally.finish(out)
}

fn direction_ok(cones: &[Vec<Vec<Int>>], v: &[Rat]) -> bool {
    for vectors in cones {
        let rats: Vec<Vec<Rat>> = vectors
            .iter()
            .map(|w| multifan::rat::int_to_rat_vec(w))
            .collect();
        let Ok(duals) = multifan::matrix::dual_basis(&rats) else {
            return false;
        };
        for pos in 0..vectors.len() {
            if multifan::rat::dot(duals.row(pos), v) == rat(0) {
                return false;
            }
        }
    }
    true
}

/// Checks used by `ehrhart --check`: interpolate counts and decompose
/// each coefficient through the residue coefficients at two seeded
/// planes.
pub fn check_ehrhart(
    out: &mut dyn Write,
    fan: &SimplicialMultiFan,
    xi: &XiClass,
    poly: Option<&HRepPolytope>,
    a: &[Rat],
    seed: u64,
) -> CmdResult {
    let n = fan.rank();
    // counts at nu = 1..n+1 determine the polynomial; compare at each nu
    for nu in 1..=(n as i64 + 1) {
        let scaled = xi.scale_by_int(nu);
        let po = MultiPolytope::new(fan, scaled).map_err(|e| CmdError::input(e.to_string()))?;
        let count = po
            .count_points(&Simplex::empty())
            .map_err(|e| CmdError::input(e.to_string()))?;
        let mut predicted = rat(0);
        let nu_rat = rat(nu);
        for (k, ak) in a.iter().enumerate() {
            let mut pow = rat(1);
            for _ in 0..(n - k) {
                pow *= &nu_rat;
            }
            predicted += ak * pow;
        }
        if predicted != rat(count) {
            let _ = writeln!(out, "check interpolation nu={nu}: FAIL");
            return Err(CmdError::violation("count interpolation mismatch"));
        }
        if let Some(p) = poly {
            let brute = p
                .brute_count(nu)
                .map_err(|e| CmdError::input(e.to_string()))?;
            if brute != count {
                let _ = writeln!(out, "check brute count nu={nu}: FAIL");
                return Err(CmdError::violation("brute count mismatch"));
            }
        }
    }
    let _ = writeln!(out, "check interpolation: ok");
    for s in 0..2u64 {
        for (k, ak) in a.iter().enumerate() {
            let mut total = rat(0);
            if k == 0 {
                total = volume(fan, xi, &Simplex::empty())
                    .map_err(|e| CmdError::input(e.to_string()))?;
            } else {
                let e = sample_generic_e(fan, k, seed + s);
                for j in fan.faces(k) {
                    let m = mu_todd(fan, k, j, &e).map_err(|e| CmdError::input(e.to_string()))?;
                    let vol = volume(fan, xi, j).map_err(|e| CmdError::input(e.to_string()))?;
                    total += m.value * vol;
                }
            }
            if total != *ak {
                let _ = writeln!(out, "check decomposition seed={s} k={k}: FAIL");
                return Err(CmdError::violation("coefficient decomposition mismatch"));
            }
        }
    }
    let _ = writeln!(out, "check decomposition: ok");
    Ok(())
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_verify(
    out: &mut dyn Write,
    suite: &str,
    fan: &Option<PathBuf>,
    xi: &Option<PathBuf>,
    polytope: &Option<PathBuf>,
    seed: u64,
    trials: u64,
    order: i64,
    samples: u64,
) -> CmdResult {
    let cases = match user_cases(fan, xi, polytope)? {
        Some(cases) => cases,
        None => fixture_cases(),
    };
    match suite {
        "main" => suite_main(out, &cases, seed, trials, samples),
        "corollary" => suite_corollary(out, &cases, seed),
        "rigidity" => suite_rigidity(out, &cases, order),
        "counts" => suite_counts(out, &cases),
        "additivity" => suite_additivity(out, seed, order),
        "wedge" => suite_wedge(out, &cases, seed),
        other => Err(CmdError::input(format!(
            "unknown suite {other:?}; expected main|corollary|rigidity|additivity|counts|wedge"
        ))),
    }
}

fn suite_wedge(out: &mut dyn Write, cases: &[Case], seed: u64) -> CmdResult {
    let mut tally = Tally::new();
    for case in cases {
        let fan = &case.fan;
        for k in 1..=fan.rank() {
            for e_seed in 0..2u64 {
                let e = sample_generic_e(fan, k, seed + e_seed);
                for j in fan.faces(k) {
                    let ok = verify_lemma_wevj(fan, j, &e)
                        .map_err(|e| CmdError::input(e.to_string()))?;
                    tally.record(
                        out,
                        &format!("{} k={k} face={j} plane={e_seed}", case.name),
                        ok,
                        "",
                    );
                }
            }
        }
    }
    tally.finish(out)
}
