mod args;
mod output;
mod report;

use std::io::Write;
use std::process::ExitCode;

use apform_core::apfinder::{
    bound_from_density_ln, bound_nf_ln, bound_qf_ln, check_divisibility_certificate, ln_difference,
    longest_ap_with_difference, search_longest_ap, ApReport, DensityHypothesis, NormFormBound, QuadraticBound,
};
use apform_core::certificate::PsCertifier;
use apform_core::density::{empirical_c1, represented_prime_density, theta_ap, theta_ps};
use apform_core::normform::{
    certify_ps_nf, clear_denominators, enumerate_values_nf, is_invertible_ideal, module_hnf, multiplier_ring,
    norm_form_for_basis, ok_module, oracle_ps_nf_with_budget, NormFormPolynomial, NumberFieldDescription,
};
use apform_core::quadform::{
    analyze, certify_ps, enumerate_values, normalize, oracle_ps_with_budget, represents, BinaryQuadraticForm,
    FormAnalysis, OracleBackedCertifier, ORACLE_MAX_POINTS,
};
use apform_core::values::ValueSet;
use apform_core::{Error, Result};
use clap::Parser;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::Value;

use args::{
    ApSearch, Cli, DensityCmd, FieldArgs, FormCmd, FormCoeffs, Group, LogG, NfCmd, OptionalFieldArgs, Poly, Subject,
    Vectors,
};
use report::{C1Row, DensityBound, ErrorBody, ErrorReport, NfBoundReport, NfBuildReport, QfBoundReport};

fn json<T: Serialize>(v: T) -> Result<Value> {
    Ok(serde_json::to_value(v).expect("reports serialize"))
}

fn build_form(f: &FormCoeffs) -> Result<BinaryQuadraticForm> {
    BinaryQuadraticForm::new(f.0.clone(), f.1.clone(), f.2.clone())
}

struct Module {
    field: NumberFieldDescription,
    generators: Vec<Vec<BigRational>>,
}

impl Module {
    fn from_args(a: &FieldArgs) -> Result<Self> {
        Self::new(&a.minpoly, &a.intbasis, &a.module)
    }

    fn new(minpoly: &Poly, intbasis: &Option<Vectors>, module: &Option<Vectors>) -> Result<Self> {
        let field = NumberFieldDescription::new(minpoly.0.clone(), intbasis.as_ref().map(|b| b.0.clone()))?;
        let generators = match module {
            Some(m) => m.0.clone(),
            None => field.integral_basis().to_vec(),
        };
        Ok(Module { field, generators })
    }

    /// Norm form in the user's generators when they form a basis, else in
    /// the HNF basis.
    fn norm_form(&self) -> Result<NormFormPolynomial> {
        let m = module_hnf(&self.field, &self.generators)?;
        if self.generators.len() == self.field.degree() {
            norm_form_for_basis(&self.field, &self.generators)
        } else {
            norm_form_for_basis(&self.field, &m.basis())
        }
    }
}

enum Resolved {
    Form(FormAnalysis),
    Field(Module),
}

fn resolve(s: &Subject) -> Result<Resolved> {
    match (&s.form, &s.field) {
        (Some(f), _) => Ok(Resolved::Form(analyze(&build_form(f)?)?)),
        (
            None,
            OptionalFieldArgs {
                minpoly: Some(h),
                intbasis,
                module,
            },
        ) => Ok(Resolved::Field(Module::new(h, intbasis, module)?)),
        (None, _) => Err(Error::InvalidArgument("either --form or --minpoly is required".into())),
    }
}

impl Resolved {
    fn certifier(&self) -> &dyn PsCertifier {
        match self {
            Resolved::Form(a) => a,
            Resolved::Field(m) => &m.field,
        }
    }
}

fn find_ap(values: &ValueSet, search: &ApSearch) -> Result<ApReport> {
    match (search.g, search.gmax) {
        (Some(g), _) => longest_ap_with_difference(values, g),
        (None, Some(gmax)) => search_longest_ap(values, gmax),
        (None, None) => Err(Error::InvalidArgument("--g or --gmax is required".into())),
    }
}

fn ln_of(g: &LogG) -> Result<f64> {
    match (&g.g, g.ln_g) {
        (Some(g), _) => ln_difference(g),
        (None, Some(l)) => Ok(l),
        (None, None) => Err(Error::InvalidArgument("--g or --ln-g is required".into())),
    }
}

fn run_form(cmd: &FormCmd) -> Result<Value> {
    match cmd {
        FormCmd::Analyze(a) => json(analyze(&build_form(&a.form)?)?),
        FormCmd::Normalize(a) => json(normalize(&build_form(&a.form)?)),
        FormCmd::Ps {
            form,
            p,
            oracle_fallback,
        } => {
            let analysis = analyze(&build_form(&form.form)?)?;
            if *oracle_fallback {
                json(
                    OracleBackedCertifier {
                        analysis,
                        max_points: ORACLE_MAX_POINTS,
                    }
                    .certify(*p),
                )
            } else {
                json(certify_ps(&analysis, *p))
            }
        }
        FormCmd::OraclePs { form, p, max_points } => {
            json(oracle_ps_with_budget(&build_form(&form.form)?, *p, *max_points)?)
        }
        FormCmd::Values { form, x, boxed } => json(enumerate_values(&build_form(&form.form)?, *x, *boxed)?),
        FormCmd::Represents { form, m, boxed } => json(represents(&build_form(&form.form)?, *m, *boxed)?),
        FormCmd::FindAp { form, x, boxed, search } => {
            let values = enumerate_values(&build_form(&form.form)?, *x, *boxed)?;
            json(find_ap(&values, search)?)
        }
        FormCmd::CertifyAp {
            form,
            g,
            k,
            pbudget,
            oracle_fallback,
        } => {
            let analysis = analyze(&build_form(&form.form)?)?;
            let check = if *oracle_fallback {
                let c = OracleBackedCertifier {
                    analysis,
                    max_points: ORACLE_MAX_POINTS,
                };
                check_divisibility_certificate(&c, *g, *k, *pbudget)?
            } else {
                check_divisibility_certificate(&analysis, *g, *k, *pbudget)?
            };
            json(check)
        }
        FormCmd::Bound {
            form,
            c,
            l,
            log_improved,
            g,
            c1,
            c2,
        } => {
            let form = build_form(&form.form)?;
            let delta = analyze(&form)?.delta().clone();
            let params = QuadraticBound {
                c: *c,
                l: *l,
                log_improved: *log_improved,
            };
            let ln_g = ln_of(g)?;
            let bound = bound_qf_ln(&params, &delta, ln_g)?;
            let density = match (c1, c2) {
                (Some(c1), Some(c2)) => {
                    let hypothesis = DensityHypothesis { c1: *c1, c2: *c2 };
                    let bound = bound_from_density_ln(&hypothesis, ln_g)?;
                    Some(DensityBound { hypothesis, bound })
                }
                _ => None,
            };
            json(QfBoundReport {
                form,
                delta,
                params,
                ln_g,
                bound,
                density,
            })
        }
    }
}

fn nf_build(a: &FieldArgs) -> Result<NfBuildReport> {
    let m = Module::from_args(a)?;
    let module = module_hnf(&m.field, &m.generators)?;
    let (_, scalar) = clear_denominators(&m.field, &module);
    let (okm, norm) = ok_module(&m.field, &module)?;
    let ring = multiplier_ring(&m.field, &module)?;
    let invertible = is_invertible_ideal(&m.field, &module, &ring)?;
    let norm_form = m.norm_form()?;
    Ok(NfBuildReport {
        field: m.field,
        module,
        scalar,
        ok_module: okm,
        norm,
        multiplier_ring: ring,
        invertible,
        norm_form,
    })
}

fn run_nf(cmd: &NfCmd) -> Result<Value> {
    match cmd {
        NfCmd::Build(a) => json(nf_build(a)?),
        NfCmd::Ps { field, p } => json(certify_ps_nf(&Module::from_args(field)?.field, *p)),
        NfCmd::OraclePs { field, p, max_points } => {
            let f = Module::from_args(field)?.norm_form()?;
            json(oracle_ps_nf_with_budget(&f, *p, *max_points)?)
        }
        NfCmd::Values { field, x, boxed } => {
            let f = Module::from_args(field)?.norm_form()?;
            json(enumerate_values_nf(&f, *x, *boxed)?)
        }
        NfCmd::FindAp {
            field,
            x,
            boxed,
            search,
        } => {
            let f = Module::from_args(field)?.norm_form()?;
            json(find_ap(&enumerate_values_nf(&f, *x, *boxed)?, search)?)
        }
        NfCmd::Bound { cn, l, delta_tilde, g } => {
            let params = NormFormBound {
                cn: *cn,
                l: *l,
                delta_tilde: *delta_tilde,
            };
            let ln_g = ln_of(g)?;
            let bound = bound_nf_ln(&params, ln_g)?;
            json(NfBoundReport { params, ln_g, bound })
        }
    }
}

/// A single report for one `X`, an array for several.
fn per_x<T: Serialize>(xs: &[u64], f: impl Fn(u64) -> Result<T>) -> Result<Value> {
    let rows = xs.iter().map(|&x| f(x)).collect::<Result<Vec<T>>>()?;
    match rows.len() {
        1 => json(&rows[0]),
        _ => json(rows),
    }
}

fn run_density(cmd: &DensityCmd) -> Result<Value> {
    match cmd {
        DensityCmd::ThetaPs { subject, x } => {
            let s = resolve(subject)?;
            per_x(x, |x| theta_ps(s.certifier(), x))
        }
        DensityCmd::ThetaAp { modulus, c, x } => per_x(x, |x| theta_ap(*modulus, *c, x)),
        DensityCmd::Primes { subject, x, boxed } => {
            let xmax = x.iter().copied().max().unwrap_or(0);
            let values = match resolve(subject)? {
                Resolved::Form(a) => enumerate_values(&a.form, xmax, *boxed)?,
                Resolved::Field(m) => {
                    let b = boxed.ok_or_else(|| Error::InvalidArgument("norm forms need --box".into()))?;
                    enumerate_values_nf(&m.norm_form()?, xmax, b)?
                }
            };
            per_x(x, |x| represented_prime_density(&values, x))
        }
        DensityCmd::EmpiricalC1 { subject, x } => {
            let s = resolve(subject)?;
            per_x(x, |x| {
                Ok(C1Row {
                    x,
                    c1: empirical_c1(s.certifier(), x)?,
                })
            })
        }
    }
}

fn run(cli: &Cli) -> Result<Value> {
    match &cli.command {
        Group::Form(c) => run_form(c),
        Group::Nf(c) => run_nf(c),
        Group::Density(c) => run_density(c),
    }
}

fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    // a closed pipe is not worth a panic
    let _ = out.write_all(text.as_bytes());
    let _ = out.flush();
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads.filter(|&n| n > 0) {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("apform: could not size the thread pool: {e}");
        }
    }
    match run(&cli) {
        Ok(v) => {
            emit(&output::render(&v, cli.out));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("apform: {e}");
            let report = ErrorReport {
                error: ErrorBody {
                    kind: e.kind().to_string(),
                    message: e.to_string(),
                },
            };
            emit(&output::render(
                &serde_json::to_value(report).expect("reports serialize"),
                cli.out,
            ));
            ExitCode::from(1)
        }
    }
}
