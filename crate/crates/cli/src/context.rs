use std::collections::BTreeSet;
use std::fs;

use anyhow::{bail, Context as _, Result};
use magform::formation::{FormationConfig, FormationSpec, Preset, WordSelection};
use magform::words::Alphabet;
use magform::Exec;

use crate::args::{AlphabetArgs, Cli, FormationArgs, Format, PresetArg, DEFAULT_MAX_K, DEFAULT_MAX_N, DEFAULT_MAX_P};

/// Settings shared by every subcommand.
#[derive(Debug, Clone)]
pub struct Context {
    pub format: Format,
    pub seed: u64,
    pub max_k: usize,
    pub max_n: usize,
    pub max_p: u64,
    pub exec: Exec,
    pub warnings: Vec<String>,
}

impl Context {
    pub fn from_cli(cli: &Cli) -> Self {
        let mut warnings = Vec::new();
        let raised = [
            ("--max-k", cli.max_k as u64, DEFAULT_MAX_K as u64),
            ("--max-n", cli.max_n as u64, DEFAULT_MAX_N as u64),
            ("--max-p", cli.max_p, DEFAULT_MAX_P),
        ];
        for (flag, value, default) in raised {
            if value > default {
                warnings.push(format!(
                    "warning: {flag} {value} is above the default {default}; runtimes may grow quickly"
                ));
            }
        }
        Context {
            format: cli.format,
            seed: cli.seed,
            max_k: cli.max_k,
            max_n: cli.max_n,
            max_p: cli.max_p,
            exec: if cli.sequential { Exec::Sequential } else { Exec::default() },
            warnings,
        }
    }

    pub fn check_k(&self, k: usize) -> Result<()> {
        if k > self.max_k {
            bail!("alphabet size {k} exceeds the bound {} (raise it with --max-k)", self.max_k);
        }
        Ok(())
    }

    pub fn check_n(&self, n: usize, what: &str) -> Result<()> {
        if n > self.max_n {
            bail!("{what} {n} exceeds the bound {} (raise it with --max-n)", self.max_n);
        }
        Ok(())
    }

    pub fn check_p(&self, p: u64) -> Result<()> {
        if p > self.max_p {
            bail!("prime {p} exceeds the bound {} (raise it with --max-p)", self.max_p);
        }
        Ok(())
    }

    pub fn check_spec(&self, spec: &FormationSpec) -> Result<()> {
        self.check_k(spec.k())?;
        self.check_n(spec.n(), "degree bound")?;
        self.check_p(spec.p())
    }
}

/// Explicit alphabet, standard alphabet of size `k`, or `None`.
pub fn explicit_alphabet(args: &AlphabetArgs) -> Result<Option<Alphabet>> {
    match (&args.alphabet, args.k) {
        (Some(a), k) => {
            let a = Alphabet::new(a.iter().map(|s| s.trim().to_string()))?;
            if let Some(k) = k {
                if k != a.size() {
                    bail!("--alphabet has {} letters but -k is {k}", a.size());
                }
            }
            Ok(Some(a))
        }
        (None, Some(k)) => Ok(Some(Alphabet::standard(k)?)),
        (None, None) => Ok(None),
    }
}

/// The explicit alphabet, or else the sorted characters occurring in the
/// given words.
pub fn alphabet_for_words(args: &AlphabetArgs, words: &[&str]) -> Result<Alphabet> {
    if let Some(a) = explicit_alphabet(args)? {
        return Ok(a);
    }
    let chars: BTreeSet<char> = words.iter().flat_map(|w| w.chars()).filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Ok(Alphabet::standard(1)?);
    }
    Ok(Alphabet::new(chars.into_iter().map(String::from))?)
}

/// The explicit alphabet, or else the sorted generator names of a group word.
pub fn alphabet_for_group_word(args: &AlphabetArgs, word: &str) -> Result<Alphabet> {
    if let Some(a) = explicit_alphabet(args)? {
        return Ok(a);
    }
    let names: BTreeSet<&str> = word
        .split_whitespace()
        .filter(|t| *t != "1")
        .map(|t| t.split_once('^').map_or(t, |(s, _)| s))
        .collect();
    if names.is_empty() {
        return Ok(Alphabet::standard(1)?);
    }
    Ok(Alphabet::new(names)?)
}

fn uses_inline_flags(args: &FormationArgs) -> bool {
    args.preset.is_some()
        || args.p.is_some()
        || args.n.is_some()
        || args.t.is_some()
        || args.j.is_some()
        || args.words.is_some()
        || args.alphabet.alphabet.is_some()
        || args.alphabet.k.is_some()
}

/// The formation described by `--config` or by inline flags, if any.
pub fn formation_config(args: &FormationArgs) -> Result<Option<FormationConfig>> {
    if let Some(path) = &args.config {
        if uses_inline_flags(args) {
            bail!("use either --config or inline formation flags, not both");
        }
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let config = FormationConfig::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
        return Ok(Some(config));
    }
    if args.preset.is_none() && args.j.is_none() {
        return Ok(None);
    }
    let Some(p) = args.p else {
        bail!("a formation needs the prime -p");
    };
    Ok(Some(FormationConfig {
        alphabet: explicit_alphabet(&args.alphabet)?,
        k: None,
        n: args.n,
        p,
        j: args.j.clone(),
        preset: args.preset.map(|p| match p {
            PresetArg::LowerPCentral => Preset::LowerPCentral,
            PresetArg::Zassenhaus => Preset::Zassenhaus,
        }),
        t: args.t,
        words: args.words.clone().map(WordSelection::Words),
    }))
}

/// Builds and bounds-checks the formation, if one was described.
pub fn formation(ctx: &Context, args: &FormationArgs) -> Result<Option<FormationSpec>> {
    let Some(config) = formation_config(args)? else {
        return Ok(None);
    };
    let alphabet = config.alphabet()?;
    ctx.check_k(alphabet.size())?;
    ctx.check_p(config.p)?;
    if let Some(n) = config.n.or(config.j.as_ref().map(Vec::len)) {
        ctx.check_n(n, "degree bound")?;
    }
    let spec = config.build()?;
    ctx.check_spec(&spec)?;
    Ok(Some(spec))
}
