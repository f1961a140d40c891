use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;

use super::config::{RunConfig, Suite, DEFAULT_TRIALS};
use super::report::{CheckResult, ReportEnvelope, ResultRecord};
use super::sampling;
use crate::bundles::{
    chart_transition, graviton_fiber, overlap, section, standard_polarization, FiberElement, HelicityBundle, Sign,
};
use crate::error::Result;
use crate::geometry::{rotation_from_axis_angle, Chart, MomentumPoint, Vec3, POLE_GUARD};
use crate::poincare::{
    boost_fiber, field_tensor_boost, little_group_element, measure_helicity, photon_field, rotate_fiber,
    rotation_phase, translate_fiber, wigner_angle, wigner_phase_check, SO2Rep,
};

/// Worst case of one property across a suite's samples.
struct Check {
    name: &'static str,
    tolerance: f64,
    cases: usize,
    worst: f64,
    inputs: String,
}

impl Check {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Check {
            name,
            tolerance,
            cases: 0,
            worst: 0.0,
            inputs: String::new(),
        }
    }

    /// Records one case; errors count as an infinite defect.
    fn record(&mut self, defect: Result<f64>, inputs: impl FnOnce() -> String) {
        self.cases += 1;
        let (d, note) = match defect {
            Ok(d) if d.is_nan() => (f64::INFINITY, " (NaN)".to_string()),
            Ok(d) => (d, String::new()),
            Err(e) => (f64::INFINITY, format!(" ({e})")),
        };
        if d > self.worst || self.inputs.is_empty() {
            self.worst = self.worst.max(d);
            self.inputs = inputs() + &note;
        }
    }

    fn finish(self, suite: Suite) -> CheckResult {
        CheckResult {
            suite: suite.name().to_string(),
            check: self.name.to_string(),
            cases: self.cases,
            worst: self.worst,
            tolerance: self.tolerance,
            inputs: self.inputs,
            pass: self.worst < self.tolerance,
        }
    }
}

fn fmt_v(v: &Vec3) -> String {
    format!("[{:.6}, {:.6}, {:.6}]", v.0[0], v.0[1], v.0[2])
}

/// A chart that is valid at `khat`, chosen at random where both are.
fn random_chart<R: Rng>(rng: &mut R, khat: &Vec3) -> Chart {
    let c = if rng.gen::<bool>() {
        Chart::NorthAligned
    } else {
        Chart::SouthAligned
    };
    if c.is_valid_at(khat, POLE_GUARD) {
        c
    } else {
        c.other()
    }
}

fn photon(khat: &Vec3, sign: Sign) -> Result<FiberElement> {
    section(&HelicityBundle::photon(sign), khat, Chart::for_direction(khat))
}

fn sign_of<R: Rng>(rng: &mut R) -> Sign {
    if rng.gen::<bool>() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

fn suite_bundles<R: Rng>(rng: &mut R, trials: usize) -> Vec<Check> {
    let mut norm = Check::new("unit_norm", 1e-12);
    let mut gauge = Check::new("transverse_symmetric", 1e-10);
    let mut cross = Check::new("cross_mode_overlap", 1e-12);
    let mut conj = Check::new("conjugation_symmetry", 1e-12);
    let mut transition = Check::new("transition_unitary", 1e-12);
    for _ in 0..trials {
        let h = rng.gen_range(-3..=3);
        let k = sampling::direction(rng);
        let chart = random_chart(rng, &k);
        let explicit = HelicityBundle::explicit(h).expect("|h| <= 3");
        let s = section(&explicit, &k, chart);
        let inputs = || format!("h={h} khat={} chart={chart:?}", fmt_v(&k));
        norm.record(
            s.as_ref()
                .map(|s| (s.tensor().expect("explicit").norm() - 1.0).abs())
                .map_err(Clone::clone),
            inputs,
        );
        gauge.record(s.map(|s| s.gauge_defect()), inputs);

        let q = sampling::direction(rng);
        if k.dot(&q) > -0.9 {
            let (cp, cq) = (Chart::for_direction(&k), Chart::for_direction(&q));
            let d = overlap(&explicit, &k, &q, cp, cq)
                .and_then(|a| Ok((a - overlap(&HelicityBundle::power(h), &k, &q, cp, cq)?).norm()));
            cross.record(d, || format!("h={h} p={} q={}", fmt_v(&k), fmt_v(&q)));
            let power = HelicityBundle::power(h);
            let d =
                overlap(&power, &k, &q, cp, cq).and_then(|a| Ok((a.conj() - overlap(&power, &q, &k, cq, cp)?).norm()));
            conj.record(d, || format!("h={h} p={} q={}", fmt_v(&k), fmt_v(&q)));
        }
        if k.z().abs() < 0.99 {
            let t = chart_transition(&HelicityBundle::power(h), &k, Chart::NorthAligned, Chart::SouthAligned);
            transition.record(t.map(|t| (t.norm() - 1.0).abs()), || {
                format!("h={h} khat={}", fmt_v(&k))
            });
        }
    }
    vec![norm, gauge, cross, conj, transition]
}

fn suite_graviton<R: Rng>(rng: &mut R, trials: usize) -> Vec<Check> {
    let mut tt = Check::new("transverse_traceless", 1e-10);
    let mut matches = Check::new("matches_rank2_section", 1e-12);
    let mut phase = Check::new("rotation_phase", 1e-10);
    for _ in 0..trials {
        let k = sampling::direction(rng);
        let chart = random_chart(rng, &k);
        let sign = sign_of(rng);
        let theta = sampling::angle(rng);
        let inputs = || format!("sign={sign:?} khat={} chart={chart:?} theta={theta:.6}", fmt_v(&k));
        let g = graviton_fiber(&k, chart, sign);
        tt.record(g.as_ref().map(|g| g.gauge_defect()).map_err(Clone::clone), inputs);
        let d = g.as_ref().map_err(Clone::clone).and_then(|g| {
            let s = section(&HelicityBundle::explicit(2 * sign.value())?, &k, chart)?;
            Ok(g.to_tensor().max_abs_diff(s.tensor().expect("explicit")))
        });
        matches.record(d, inputs);
        let d = g.and_then(|g| {
            let r = g.rotate(&rotation_from_axis_angle(&k, theta))?;
            let want = Complex64::from_polar(1.0, -2.0 * sign.value() as f64 * theta);
            Ok((g.inner(&r) - want).norm())
        });
        phase.record(d, inputs);
    }
    vec![tt, matches, phase]
}

fn suite_helicity<R: Rng>(rng: &mut R, trials: usize) -> Vec<Check> {
    let mut phase = Check::new("rotation_phase", 1e-10);
    let mut measured = Check::new("measured_helicity", 0.5);
    for h in -5..=5 {
        for _ in 0..trials {
            let k = sampling::direction(rng);
            let theta = sampling::angle(rng);
            let want = SO2Rep::new(h).character(theta);
            let inputs = || format!("h={h} khat={} theta={theta:.6}", fmt_v(&k));
            phase.record(
                rotation_phase(&HelicityBundle::power(h), &k, theta).map(|z| (z - want).norm()),
                inputs,
            );
            if h.abs() <= 3 {
                let b = HelicityBundle::explicit(h).expect("|h| <= 3");
                phase.record(rotation_phase(&b, &k, theta).map(|z| (z - want).norm()), inputs);
            }
            measured.record(
                measure_helicity(&HelicityBundle::power(h), &k).map(|m| (m - h).abs() as f64),
                inputs,
            );
        }
    }
    vec![phase, measured]
}

fn suite_rotation<R: Rng>(rng: &mut R, trials: usize) -> Vec<Check> {
    let mut covariance = Check::new("fiber_covariance", 1e-12);
    let mut composition = Check::new("composition", 1e-12);
    for _ in 0..trials {
        let h = rng.gen_range(-3..=3);
        let bundle = HelicityBundle::explicit(h).expect("|h| <= 3");
        let k = sampling::direction(rng);
        let (r1, r2) = (sampling::rotation(rng), sampling::rotation(rng));
        let inputs = || format!("h={h} khat={} r1={:?} r2={:?}", fmt_v(&k), r1.0, r2.0);
        let d = section(&bundle, &k, Chart::for_direction(&k)).and_then(|x| {
            let y = rotate_fiber(&r1, &x)?;
            let rk = r1.mul_vec(&k);
            let s = section(&bundle, &rk, Chart::for_direction(&rk))?;
            Ok((s
                .tensor()
                .expect("explicit")
                .inner(y.tensor().expect("explicit"))
                .norm()
                - 1.0)
                .abs())
        });
        covariance.record(d, inputs);
        let d = section(&bundle, &k, Chart::for_direction(&k)).and_then(|x| {
            let a = rotate_fiber(&r1, &rotate_fiber(&r2, &x)?)?;
            let b = rotate_fiber(&r1.mul_mat(&r2), &x)?;
            Ok(a.tensor()
                .expect("explicit")
                .max_abs_diff(b.tensor().expect("explicit")))
        });
        composition.record(d, inputs);
    }
    vec![covariance, composition]
}

fn suite_translation<R: Rng>(rng: &mut R, trials: usize) -> Vec<Check> {
    let mut phase = Check::new("plane_wave_phase", 1e-12);
    let mut semidirect = Check::new("lorentz_conjugation", 1e-10);
    let mut composition = Check::new("composition", 1e-12);
    for _ in 0..trials {
        let kvec = sampling::momentum(rng, 10.0);
        let sign = sign_of(rng);
        let a: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..=1.0));
        let b: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..=1.0));
        let l = sampling::lorentz(rng, 3.0);
        let inputs = || format!("sign={sign:?} k={} a={a:?} b={b:?}", fmt_v(&kvec));
        let x = MomentumPoint::new(kvec).and_then(|p| photon(&p.direction(), sign)?.with_momentum(p));
        let d = x.as_ref().map_err(Clone::clone).map(|x| {
            let kv = x.at().four_vector();
            let want = Complex64::from_polar(1.0, kv[0] * a[0] - kv[1] * a[1] - kv[2] * a[2] - kv[3] * a[3]);
            let y = translate_fiber(&a, x);
            let got = x.tensor().expect("explicit").inner(y.tensor().expect("explicit"));
            (got - want).norm()
        });
        phase.record(d, inputs);
        let d = x.as_ref().map_err(Clone::clone).and_then(|x| {
            let lhs = boost_fiber(&l, &translate_fiber(&a, x))?.element;
            let rhs = translate_fiber(&l.apply(&a), &boost_fiber(&l, x)?.element);
            Ok(photon_field(&lhs)?.sub(&photon_field(&rhs)?).max_abs())
        });
        semidirect.record(d, || format!("{} lorentz={:?}", inputs(), l.matrix().0));
        let d = x.and_then(|x| {
            let ab: [f64; 4] = std::array::from_fn(|i| a[i] + b[i]);
            let two = translate_fiber(&a, &translate_fiber(&b, &x));
            let one = translate_fiber(&ab, &x);
            Ok(photon_field(&two)?.sub(&photon_field(&one)?).max_abs())
        });
        composition.record(d, inputs);
    }
    vec![phase, semidirect, composition]
}

fn suite_boost<R: Rng>(rng: &mut R, trials: usize) -> Vec<Check> {
    let mut transverse = Check::new("transversality", 1e-10);
    let mut subbundle = Check::new("helicity_subbundle", 1e-9);
    let mut oracle = Check::new("field_tensor_oracle", 1e-10);
    let mut momentum = Check::new("momentum_image", 1e-10);
    for _ in 0..trials {
        let kvec = sampling::momentum(rng, 10.0);
        let sign = sign_of(rng);
        let l = sampling::lorentz(rng, 3.0);
        let inputs = || format!("sign={sign:?} k={} lorentz={:?}", fmt_v(&kvec), l.matrix().0);
        let out = MomentumPoint::new(kvec).and_then(|p| {
            let x = photon(&p.direction(), sign)?.with_momentum(p)?;
            let y = boost_fiber(&l, &x)?;
            Ok((x, y))
        });
        let (x, y) = match out {
            Ok(v) => v,
            Err(e) => {
                for c in [&mut transverse, &mut subbundle, &mut oracle, &mut momentum] {
                    c.record(Err(e.clone()), inputs);
                }
                continue;
            }
        };
        let e_out = photon_field(&y.element).expect("photon");
        let k_out = y.element.at().direction();
        transverse.record(Ok(e_out.dot_real(&k_out).norm() / e_out.norm()), inputs);
        let d = standard_polarization(&k_out, Chart::for_direction(&k_out), sign.flip())
            .map(|wrong| wrong.v.hdot(&e_out).norm() / e_out.norm());
        subbundle.record(d, inputs);
        let e_in = photon_field(&x).expect("photon");
        let want = field_tensor_boost(&l, &e_in, &x.at().direction());
        oracle.record(Ok(e_out.scale_re(y.scale).sub(&want).max_abs() / e_in.norm()), inputs);
        let kv = l.apply(&x.at().four_vector());
        let got = y.element.at().four_vector();
        let drift = (0..4).map(|i| (kv[i] - got[i]).abs()).fold(0.0, f64::max) / kv[0];
        momentum.record(Ok(drift), inputs);
    }
    vec![transverse, subbundle, oracle, momentum]
}

fn suite_wigner<R: Rng>(rng: &mut R, trials: usize, fixed_k: Option<[f64; 3]>) -> Vec<Check> {
    let mut null = Check::new("null_rotation_phase", 1e-8);
    let mut mixed = Check::new("wigner_phase", 1e-8);
    let mut angle = Check::new("angle_extraction", 1e-9);
    let mut fixes = Check::new("fixes_momentum", 1e-10);
    for _ in 0..trials {
        let kvec = fixed_k.map(Vec3).unwrap_or_else(|| sampling::momentum(rng, 5.0));
        let theta = sampling::angle(rng);
        let alpha = rng.gen_range(-2.0..=2.0);
        let beta = rng.gen_range(-2.0..=2.0);
        let sign = sign_of(rng);
        let inputs = || {
            format!(
                "sign={sign:?} k={} theta={theta:.6} alpha={alpha:.6} beta={beta:.6}",
                fmt_v(&kvec)
            )
        };
        let k = match MomentumPoint::new(kvec) {
            Ok(k) => k,
            Err(e) => {
                for c in [&mut null, &mut mixed, &mut angle, &mut fixes] {
                    c.record(Err(e.clone()), inputs);
                }
                continue;
            }
        };
        let pure = little_group_element(&k, 0.0, alpha, beta);
        null.record(
            wigner_phase_check(&pure, sign).map(|r| (r.phase - 1.0).norm().max(r.mixing)),
            inputs,
        );
        let w = little_group_element(&k, theta, alpha, beta);
        mixed.record(
            wigner_phase_check(&w, sign).map(|r| r.phase_error.max(r.mixing).max((r.scale - 1.0).abs())),
            inputs,
        );
        angle.record(
            wigner_angle(&w.lorentz, &k).map(|t| {
                let d = (t - theta).rem_euclid(2.0 * PI);
                d.min(2.0 * PI - d)
            }),
            inputs,
        );
        let kv = k.four_vector();
        let wk = w.lorentz.apply(&kv);
        fixes.record(
            Ok((0..4).map(|i| (wk[i] - kv[i]).abs()).fold(0.0, f64::max) / k.omega()),
            inputs,
        );
    }
    vec![null, mixed, angle, fixes]
}

fn suite_so2<R: Rng>(rng: &mut R, trials: usize) -> Vec<Check> {
    let mut hom = Check::new("homomorphism", 1e-12);
    let mut period = Check::new("periodicity", 1e-12);
    let mut unitary = Check::new("unitarity", 1e-14);
    for _ in 0..trials {
        let h = rng.gen_range(-5..=5);
        let (a, b) = (sampling::angle(rng), sampling::angle(rng));
        let rep = SO2Rep::new(h);
        let inputs = || format!("h={h} a={a:.6} b={b:.6}");
        hom.record(
            Ok((rep.character(a) * rep.character(b) - rep.character(a + b)).norm()),
            inputs,
        );
        period.record(Ok((rep.character(a + 2.0 * PI) - rep.character(a)).norm()), inputs);
        unitary.record(Ok((rep.character(a).norm() - 1.0).abs()), inputs);
    }
    vec![hom, period, unitary]
}

/// Runs one property suite with its own random stream.
pub fn run_suite(suite: Suite, seed: u64, trials: usize, k: Option<[f64; 3]>) -> Vec<CheckResult> {
    let mut rng = sampling::stream(seed, suite.index());
    let checks = match suite {
        Suite::Bundles => suite_bundles(&mut rng, trials),
        Suite::Graviton => suite_graviton(&mut rng, trials),
        Suite::Helicity => suite_helicity(&mut rng, trials),
        Suite::Rotation => suite_rotation(&mut rng, trials),
        Suite::Translation => suite_translation(&mut rng, trials),
        Suite::Boost => suite_boost(&mut rng, 10 * trials),
        Suite::Wigner => suite_wigner(&mut rng, trials, k),
        Suite::So2 => suite_so2(&mut rng, trials),
    };
    checks.into_iter().map(|c| c.finish(suite)).collect()
}

/// Runs the requested property suites (all of them by default).
pub fn cmd_verify(config: &RunConfig) -> ReportEnvelope {
    let suites = config.suites.clone().unwrap_or_else(|| Suite::ALL.to_vec());
    let seed = config.seed.unwrap_or(0);
    let trials = config.trials.unwrap_or(DEFAULT_TRIALS);
    let results = suites
        .iter()
        .flat_map(|s| run_suite(*s, seed, trials, config.k))
        .map(ResultRecord::Check)
        .collect();
    ReportEnvelope::new(config.clone(), results, Vec::new())
}
