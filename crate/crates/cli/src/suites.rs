use std::time::Instant;

use anyhow::Result;
use magform::formation::{
    sample_conjugators, zassenhaus_index_formula, ExponentMap, Formation, FormationSpec,
    DEFAULT_CONJUGATORS, DEFAULT_CONJUGATOR_LEN,
};
use magform::indec::{indec_dimension, isomorphism_report, radford_basis_check};
use magform::magnus::{
    check_triangularity, magnus_expand, verify_lcs_power_containment, LcsPowerCase,
    DEFAULT_ORDER_BOUND,
};
use magform::ncpoly::{infiltration, NCPoly, StarOp};
use magform::ring::Integers;
use magform::words::{lyndon_words, words_up_to, Alphabet, Word};
use magform::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::args::{CheckOptions, FormationArgs, Format, Suite};
use crate::context::{self, explicit_alphabet, Context};
use crate::report::{CheckItem, CheckReport, Claim};

/// Everything a suite may read.
struct Input<'a> {
    ctx: &'a Context,
    spec: Option<FormationSpec>,
    alphabet: Alphabet,
    p: Option<u64>,
    opts: &'a CheckOptions,
}

impl Input<'_> {
    fn k(&self) -> usize {
        self.alphabet.size()
    }

    fn spec(&self) -> Result<&FormationSpec> {
        self.spec
            .as_ref()
            .ok_or_else(|| anyhow::anyhow!("this suite needs a formation: pass --config or --preset/-j with -p and -n"))
    }

    fn fmt(&self, w: &Word) -> String {
        self.alphabet.format_word(w)
    }
}

fn input<'a>(ctx: &'a Context, args: &FormationArgs, opts: &'a CheckOptions) -> Result<Input<'a>> {
    let spec = context::formation(ctx, args)?;
    let alphabet = match &spec {
        Some(s) => s.alphabet().clone(),
        None => explicit_alphabet(&args.alphabet)?.unwrap_or(Alphabet::standard(2)?),
    };
    ctx.check_k(alphabet.size())?;
    let p = spec.as_ref().map(FormationSpec::p).or(args.p);
    if let Some(p) = p {
        ctx.check_p(p)?;
    }
    if let Some(n) = opts.max_len {
        ctx.check_n(n, "--max-len")?;
    }
    if let Some(n) = opts.max_deg {
        ctx.check_n(n, "--max-deg")?;
    }
    Ok(Input { ctx, spec, alphabet, p, opts })
}

fn params(input: &Input) -> Value {
    json!({
        "alphabet": input.alphabet,
        "p": input.p,
        "formation": input.spec.as_ref().map(FormationSpec::to_config),
        "samples": input.opts.samples,
        "max_len": input.opts.max_len,
        "max_deg": input.opts.max_deg,
    })
}

fn run_one(suite: Suite, input: &Input) -> CheckReport {
    let start = Instant::now();
    let mut report = CheckReport::new(suite.name(), params(input), input.ctx.seed);
    let outcome = match suite {
        Suite::Binomial => binomial(input, &mut report),
        Suite::Cfl => cfl(input, &mut report),
        Suite::Triangularity => triangularity(input, &mut report),
        Suite::FundamentalMatrix => fundamental_matrix(input, &mut report),
        Suite::LcsPower => lcs_power(input, &mut report),
        Suite::Image => image(input, &mut report),
        Suite::ShuffleRelations => shuffle_relations(input, &mut report),
        Suite::Radford => radford(input, &mut report),
        Suite::Indec => indec(input, &mut report),
        Suite::Isomorphism => isomorphism(input, &mut report),
    };
    if let Err(e) = outcome {
        report.fail_with_error(format!("{e:#}"));
    }
    report.finish(start.elapsed().as_secs_f64());
    report
}

fn print_reports(ctx: &Context, reports: &[CheckReport]) {
    for w in &ctx.warnings {
        eprintln!("{w}");
    }
    match ctx.format {
        Format::Text => {
            for r in reports {
                print!("{}", r.to_text());
            }
        }
        Format::Json => {
            let value = if let [r] = reports {
                serde_json::to_value(r)
            } else {
                serde_json::to_value(reports)
            };
            println!("{}", serde_json::to_string_pretty(&value.expect("serializable")).expect("serializable"));
        }
    }
}

pub fn check(ctx: &Context, suite: Suite, args: &FormationArgs, opts: &CheckOptions) -> Result<i32> {
    let input = input(ctx, args, opts)?;
    let report = run_one(suite, &input);
    print_reports(ctx, std::slice::from_ref(&report));
    Ok(report.exit_code())
}

/// Runs every suite; the formation suites only when a formation is given.
pub fn report(ctx: &Context, args: &FormationArgs, opts: &CheckOptions) -> Result<i32> {
    let input = input(ctx, args, opts)?;
    let reports: Vec<CheckReport> = Suite::ALL
        .iter()
        .filter(|s| input.spec.is_some() || !s.needs_formation())
        .map(|&s| run_one(s, &input))
        .collect();
    print_reports(ctx, &reports);
    Ok(reports.iter().map(CheckReport::exit_code).max().unwrap_or(0))
}

fn binomial(input: &Input, report: &mut CheckReport) -> Result<()> {
    let samples = input.opts.samples.unwrap_or(200);
    let mut rng = ChaCha8Rng::seed_from_u64(input.ctx.seed);
    let maps: Vec<ExponentMap> = (0..samples)
        .map(|_| {
            let n = rng.gen_range(1..=5);
            ExponentMap::new((0..n).map(|_| rng.gen_range(1..=16)).collect()).expect("positive values")
        })
        .collect();
    let results = input.ctx.exec.map(&maps, |e| (e.values().to_vec(), e.binomial_equiv_check()));
    let witness = results
        .iter()
        .find(|(_, b)| !b.agree())
        .map(|(e, b)| json!({"e": e, "result": b}));
    report.push(CheckItem::new(
        "binomiality agrees with conditions (a) and (b)",
        Claim::Sampled,
        samples as u64,
        witness,
    ));

    let mut cases = 0;
    let mut witness = None;
    'sweep: for p in [2u64, 3, 5] {
        for t in [1u32, 2] {
            for n in 1..=12 {
                cases += 1;
                let e = ExponentMap::zassenhaus(p, t, n)?;
                let formula = zassenhaus_index_formula(p, n);
                let check = e.binomial_equiv_check();
                if e.index_set() != formula || !check.agree() || !check.binomial {
                    witness = Some(json!({"p": p, "t": t, "n": n, "index_set": e.index_set(), "formula": formula}));
                    break 'sweep;
                }
            }
        }
    }
    report.push(CheckItem::new(
        "Zassenhaus maps are binomial with I_e = {ceil(n/p^k)}",
        Claim::Verified,
        cases,
        witness,
    ));

    if let Some(spec) = &input.spec {
        let e = spec.exponent_map();
        let check = e.binomial_equiv_check();
        let witness = (!check.agree() || !check.binomial).then(|| json!({"e": e, "result": check}));
        report.push(CheckItem::new("formation exponent map is binomial", Claim::Verified, 1, witness));
        report.data = json!({"e": e, "index_set": e.index_set()});
    }
    Ok(())
}

fn cfl(input: &Input, report: &mut CheckReport) -> Result<()> {
    let k = input.k();
    let samples = input.opts.samples.unwrap_or(100);
    let max_len = input.opts.max_len.unwrap_or(8);
    let max_deg = input.opts.max_deg.unwrap_or(4);
    let pairs: Vec<(Word, Word, NCPoly<Integers>)> = words_up_to(k, max_deg)
        .filter(|u| !u.is_empty())
        .flat_map(|u| {
            words_up_to(k, max_deg - u.len())
                .filter(|v| !v.is_empty())
                .map(move |v| (u.clone(), v))
                .collect::<Vec<_>>()
        })
        .map(|(u, v)| {
            let f = infiltration(&Integers, &u, &v);
            (u, v, f)
        })
        .collect();
    let groups = sample_conjugators(k, samples, max_len, input.ctx.seed);
    let results = input.ctx.exec.map(&groups, |g| -> magform::Result<Option<Value>> {
        let s = magnus_expand(g, k, max_deg, &Integers)?;
        for (u, v, f) in &pairs {
            let lhs = s.coeff(u)? * s.coeff(v)?;
            let rhs = s.scalar_product(f)?;
            if lhs != rhs {
                return Ok(Some(json!({
                    "group_word": g.format(&input.alphabet),
                    "u": input.fmt(u),
                    "v": input.fmt(v),
                    "product": lhs.to_string(),
                    "pairing": rhs.to_string(),
                })));
            }
        }
        Ok(None)
    });
    let mut witness = None;
    for r in results {
        if let Some(w) = r? {
            witness.get_or_insert(w);
        }
    }
    report.push(CheckItem::new(
        format!("eps_u eps_v = (Lambda, u infiltrate v) for |u|+|v| <= {max_deg}"),
        Claim::Sampled,
        (samples * pairs.len()) as u64,
        witness,
    ));
    Ok(())
}

fn triangularity(input: &Input, report: &mut CheckReport) -> Result<()> {
    let k = input.k();
    let max_len = input.opts.max_len.unwrap_or(5);
    let max_deg = input.opts.max_deg.unwrap_or(max_len + 1);
    input.ctx.check_n(max_deg, "truncation degree")?;
    let words = lyndon_words(k, max_len);
    let results = input.ctx.exec.map(&words, |w| check_triangularity(k, w, max_deg));
    let mut witness = None;
    for r in results {
        let r = r?;
        if let Some(f) = r.failure {
            witness.get_or_insert(json!({
                "lyndon_word": input.fmt(&r.word),
                "coefficient_of": input.fmt(&f.word),
                "value": f.coeff,
                "reason": f.reason,
            }));
        }
    }
    report.push(CheckItem::new(
        format!("Lambda(tau_w) = 1 + w + higher, upper triangular, up to degree {max_deg}"),
        Claim::Verified,
        words.len() as u64,
        witness,
    ));
    Ok(())
}

fn divisibility_witness(e: &Error) -> Option<Value> {
    match e {
        Error::Divisibility { word, generator, value, divisor } => Some(json!({
            "word": word,
            "generator": generator,
            "value": value,
            "divisor": divisor,
        })),
        _ => None,
    }
}

fn fundamental_matrix(input: &Input, report: &mut CheckReport) -> Result<()> {
    let spec = input.spec()?;
    let exec = input.ctx.exec;
    let formation = Formation::new(spec.clone(), exec)?;
    let size = spec.words().len() as u64;

    let prop = formation.coefficient_check(exec)?;
    let witness = prop.violations.first().map(|v| serde_json::to_value(v).expect("serializable"));
    report.push(CheckItem::new(
        "sigma_w coefficients vanish, are divisible, or equal 1 as required",
        Claim::Verified,
        prop.checked as u64,
        witness,
    ));

    let fm = match formation.fundamental_matrix(exec) {
        Ok(fm) => fm,
        Err(e) => match divisibility_witness(&e) {
            Some(w) => {
                report.push(CheckItem::new("pairing values are defined", Claim::Verified, size * size, Some(w)));
                return Ok(());
            }
            None => return Err(e.into()),
        },
    };
    let witness = fm.unitriangular_witness().map(|(r, c)| {
        json!({
            "row": input.fmt(&fm.order()[r]),
            "col": input.fmt(&fm.order()[c]),
            "value": fm.get(r, c),
        })
    });
    report.push(CheckItem::new("matrix is upper unitriangular", Claim::Verified, size * size, witness));

    if spec.lengths_in_index_set() {
        let pairing = formation.pairing_check(&fm, exec)?;
        let witness = (!pairing.passed()).then(|| serde_json::to_value(&pairing).expect("serializable"));
        report.push(CheckItem::new(
            "rho pairing matrix is the transpose and invertible",
            Claim::Verified,
            size * size,
            witness,
        ));
    } else {
        report.warn("warning: some words of L have length outside I_e; pairing check skipped");
    }

    let mut subsets: Vec<Vec<Word>> = Vec::new();
    let shorter: Vec<Word> = spec.words().iter().filter(|w| w.len() < spec.n()).cloned().collect();
    if !shorter.is_empty() && shorter.len() < spec.words().len() {
        subsets.push(shorter);
    }
    if spec.words().len() >= 2 {
        subsets.push(spec.words()[..spec.words().len() - 1].to_vec());
        subsets.push(spec.words()[1..].to_vec());
    }
    let mut witness = None;
    for s in &subsets {
        if !formation.functoriality_check(s, exec)? {
            witness = Some(json!({"subset": s.iter().map(|w| input.fmt(w)).collect::<Vec<_>>()}));
            break;
        }
    }
    report.push(CheckItem::new(
        "matrix of a sub-family is the corresponding block",
        Claim::Verified,
        subsets.len() as u64,
        witness,
    ));
    report.data = serde_json::to_value(&fm)?;
    Ok(())
}

fn lcs_power(input: &Input, report: &mut CheckReport) -> Result<()> {
    let max_i = input.opts.max_len.unwrap_or(3);
    let mut primes = vec![2u64, 3];
    if let Some(p) = input.p {
        if !primes.contains(&p) {
            primes.push(p);
        }
    }
    let mut cases = Vec::new();
    for &p in &primes {
        for i in 1..=max_i {
            for i_prime in 1..=i {
                for j in 0..=1 {
                    for j_prime in 0..=2 {
                        cases.push(LcsPowerCase { i, i_prime, p, j, j_prime });
                    }
                }
            }
        }
    }
    let mut checked = 0u64;
    let mut skipped = 0usize;
    let mut witness = None;
    for &case in &cases {
        match verify_lcs_power_containment(case, DEFAULT_ORDER_BOUND, input.ctx.exec) {
            Ok(outcome) => {
                checked += 1;
                if !outcome.agrees() && witness.is_none() {
                    witness = Some(serde_json::to_value(&outcome)?);
                }
            }
            Err(Error::SizeBound { .. }) => skipped += 1,
            Err(e) => return Err(e.into()),
        }
    }
    if skipped > 0 {
        report.warn(format!(
            "warning: {skipped} cases skipped because the group order exceeds {DEFAULT_ORDER_BOUND}"
        ));
    }
    report.push(CheckItem::new(
        "power containment in the corner subgroup matches i' p^j' >= i p^j",
        Claim::Verified,
        checked,
        witness,
    ));
    Ok(())
}

fn image(input: &Input, report: &mut CheckReport) -> Result<()> {
    let spec = input.spec()?;
    let exec = input.ctx.exec;
    let formation = Formation::new(spec.clone(), exec)?;
    let max_len = input.opts.max_len.unwrap_or(spec.n()).min(spec.n());
    let conjugators = sample_conjugators(
        spec.k(),
        input.opts.samples.unwrap_or(DEFAULT_CONJUGATORS),
        DEFAULT_CONJUGATOR_LEN,
        input.ctx.seed,
    );
    let words: Vec<Word> = words_up_to(spec.k(), max_len)
        .filter(|w| !w.is_empty() && spec.in_index_set(w.len()))
        .collect();
    let results = exec.map(&words, |w| formation.image_check(w, &conjugators));
    let mut cases = 0;
    let mut on_l = 0;
    let mut witness = None;
    let mut generator_witness = None;
    for r in results {
        let r = r?;
        cases += (r.generators_checked + r.conjugates_checked) as u64;
        if r.generator_image.is_some() {
            on_l += 1;
        }
        if r.generator_image == Some(false) && generator_witness.is_none() {
            generator_witness = Some(json!({"word": r.word}));
        }
        if !r.passed() && witness.is_none() {
            witness = Some(serde_json::to_value(&r)?);
        }
    }
    report.push(CheckItem::new(
        "rho_w sends sigma generators and sampled conjugates into the corner subgroup",
        Claim::Sampled,
        cases,
        witness,
    ));
    report.push(CheckItem::new(
        "rho_w(sigma_w) = Id + p^j(i) E for w in L",
        Claim::Verified,
        on_l,
        generator_witness,
    ));

    let in_l: Vec<&Word> = words.iter().filter(|w| spec.position(w).is_some()).collect();
    let mut witness = None;
    for w in &in_l {
        if let Some((g, l)) = formation.conjugation_check(w, &conjugators)? {
            witness = Some(json!({"word": input.fmt(w), "generator": g, "conjugator": l}));
            break;
        }
    }
    report.push(CheckItem::new(
        "rho0_w is invariant under sampled conjugation",
        Claim::Sampled,
        (in_l.len() * conjugators.len()) as u64,
        witness,
    ));
    Ok(())
}

fn shuffle_relations(input: &Input, report: &mut CheckReport) -> Result<()> {
    let spec = input.spec()?;
    let exec = input.ctx.exec;
    let formation = Formation::new(spec.clone(), exec)?;
    let max_s = input.opts.max_deg.unwrap_or(spec.n()).min(spec.n());
    let pairs = formation.shuffle_relation_pairs(max_s);
    for star in [StarOp::Shuffle, StarOp::Infiltration] {
        let results = exec.map(&pairs, |(u, v)| formation.shuffle_relation_check(u, v, star));
        let mut witness = None;
        for r in results {
            let r = r?;
            if !r.passed() && witness.is_none() {
                witness = Some(serde_json::to_value(&r)?);
            }
        }
        report.push(CheckItem::new(
            format!("rho0 vanishes on ({}) - u v for |u|+|v| in I_e", star.name()),
            Claim::Verified,
            pairs.len() as u64,
            witness,
        ));
    }
    Ok(())
}

fn radford(input: &Input, report: &mut CheckReport) -> Result<()> {
    let k = input.k();
    let max_s = input.opts.max_len.unwrap_or(5);
    let degrees: Vec<usize> = (1..=max_s).collect();
    let results = input.ctx.exec.map(&degrees, |&s| radford_basis_check(k, s));
    let mut witness = None;
    let mut dets = Vec::new();
    for r in results {
        let r = r?;
        dets.push(json!({"degree": r.degree, "size": r.size, "determinant": r.determinant}));
        if !r.passed() && witness.is_none() {
            witness = Some(serde_json::to_value(&r)?);
        }
    }
    report.push(CheckItem::new(
        "Q_w = w + lower terms with unimodular transition matrix",
        Claim::Verified,
        degrees.len() as u64,
        witness,
    ));
    report.data = Value::Array(dets);
    Ok(())
}

fn indec(input: &Input, report: &mut CheckReport) -> Result<()> {
    let k = input.k();
    let max_s = input.opts.max_len.unwrap_or(4);
    let primes = match input.p {
        Some(p) => vec![p],
        None => vec![5, 7],
    };
    let mut data = Vec::new();
    for &p in &primes {
        let degrees: Vec<usize> = (1..=max_s).collect();
        let results = input.ctx.exec.map(&degrees, |&s| indec_dimension(k, s, p));
        let mut cases = 0;
        let mut witness = None;
        let mut unmet = Vec::new();
        for r in results {
            let r = r?;
            if r.hypothesis_met {
                cases += 1;
                if !r.matches && witness.is_none() {
                    witness = Some(serde_json::to_value(&r)?);
                }
            } else {
                unmet.push(r.degree);
            }
            data.push(serde_json::to_value(&r)?);
        }
        if !unmet.is_empty() {
            report.warn(format!(
                "warning: p = {p} is not above degrees {unmet:?}; their dimensions are reported without a claim"
            ));
        }
        report.push(CheckItem::new(
            format!("dim of indecomposables equals the Lyndon count over F_{p}"),
            Claim::Verified,
            cases,
            witness,
        ));
    }
    report.data = Value::Array(data);
    Ok(())
}

fn isomorphism(input: &Input, report: &mut CheckReport) -> Result<()> {
    let spec = input.spec()?;
    let r = isomorphism_report(spec, input.ctx.exec)?;
    for w in &r.warnings {
        report.warn(w.clone());
    }
    let size = spec.words().len() as u64;
    report.push(CheckItem::new(
        "fundamental matrix is upper unitriangular",
        Claim::Verified,
        size * size,
        (!r.unitriangular).then(|| json!({"unitriangular": false})),
    ));
    report.push(CheckItem::new(
        "rho pairing matrix is the transpose and invertible",
        Claim::Verified,
        size * size,
        (!r.pairing.passed()).then(|| serde_json::to_value(&r.pairing).expect("serializable")),
    ));
    report.push(CheckItem::new(
        "shuffle and infiltration relations hold",
        Claim::Verified,
        r.relations.checked as u64,
        r.relations.failure.as_ref().map(|f| serde_json::to_value(f).expect("serializable")),
    ));
    if r.warnings.is_empty() {
        let mismatch = r.degrees.iter().find(|d| !d.matches);
        report.push(CheckItem::new(
            "indecomposables of each degree in I_e match the words of L",
            Claim::Verified,
            r.degrees.len() as u64,
            mismatch.map(|d| serde_json::to_value(d).expect("serializable")),
        ));
    } else {
        report.warn("warning: dimensions are reported without a claim");
    }
    report.data = json!({
        "index_set": r.index_set,
        "degrees": r.degrees,
        "assumptions": r.assumptions,
    });
    Ok(())
}
