use anyhow::{bail, Result};
use magform::formation::Formation;
use magform::magnus::{magnus_expand, GroupWord};
use magform::ncpoly::{NCPoly, StarOp};
use magform::ring::{Integers, IntegersMod, Ring};
use magform::words::{lyndon_words, witt_number, Alphabet};
use magform::indec::q_polynomial;
use serde_json::json;

use crate::args::{AlphabetArgs, FormationArgs, Format};
use crate::context::{self, alphabet_for_group_word, alphabet_for_words, Context};

fn emit(ctx: &Context, text: String, value: serde_json::Value) {
    for w in &ctx.warnings {
        eprintln!("{w}");
    }
    match ctx.format {
        Format::Text => print!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("serializable")),
    }
}

pub fn lyndon(ctx: &Context, max_len: usize, args: &AlphabetArgs) -> Result<i32> {
    let alphabet = context::explicit_alphabet(args)?.unwrap_or(Alphabet::standard(2)?);
    ctx.check_k(alphabet.size())?;
    ctx.check_n(max_len, "word length")?;
    if max_len == 0 {
        bail!("--max-len must be at least 1");
    }
    let words = lyndon_words(alphabet.size(), max_len);
    let mut text = String::new();
    for w in &words {
        text += &format!("{} {}\n", w.len(), alphabet.format_word(w));
    }
    let mut counts = Vec::new();
    for s in 1..=max_len {
        let count = words.iter().filter(|w| w.len() == s).count();
        let witt = witt_number(alphabet.size() as u64, s as u64);
        text += &format!("length {s}: {count} words (Witt number {witt})\n");
        counts.push(json!({"length": s, "count": count, "witt": witt as u64}));
    }
    let value = json!({
        "alphabet": alphabet,
        "max_len": max_len,
        "words": words.iter().map(|w| alphabet.format_word(w)).collect::<Vec<_>>(),
        "counts": counts,
    });
    emit(ctx, text, value);
    Ok(0)
}

fn poly_json<R: Ring>(alphabet: &Alphabet, f: &NCPoly<R>) -> serde_json::Value {
    serde_json::to_value(f.records(alphabet)).expect("serializable")
}

pub fn product(ctx: &Context, op: StarOp, u: &str, v: &str, args: &AlphabetArgs) -> Result<i32> {
    let alphabet = alphabet_for_words(args, &[u, v])?;
    ctx.check_k(alphabet.size())?;
    let (wu, wv) = (alphabet.parse_word(u)?, alphabet.parse_word(v)?);
    let f = op.apply(&Integers, &wu, &wv);
    let value = json!({
        "op": op.name(),
        "alphabet": alphabet,
        "u": u,
        "v": v,
        "terms": poly_json(&alphabet, &f),
    });
    emit(ctx, format!("{}\n", f.format(&alphabet)), value);
    Ok(0)
}

pub fn magnus(ctx: &Context, word: &str, max_deg: usize, modulus: Option<u64>, args: &AlphabetArgs) -> Result<i32> {
    let alphabet = alphabet_for_group_word(args, word)?;
    ctx.check_k(alphabet.size())?;
    ctx.check_n(max_deg, "truncation degree")?;
    let g = GroupWord::parse(&alphabet, word)?;
    let k = alphabet.size();
    let (text, ring, terms) = match modulus {
        None => {
            let s = magnus_expand(&g, k, max_deg, &Integers)?.to_poly();
            (s.format(&alphabet), Integers.descriptor(), poly_json(&alphabet, &s))
        }
        Some(m) => {
            let ring = IntegersMod::new(m)?;
            let s = magnus_expand(&g, k, max_deg, &ring)?.to_poly();
            (s.format(&alphabet), ring.descriptor(), poly_json(&alphabet, &s))
        }
    };
    let value = json!({
        "group_word": g.format(&alphabet),
        "alphabet": alphabet,
        "max_deg": max_deg,
        "ring": ring,
        "terms": terms,
    });
    emit(ctx, format!("{text}\n"), value);
    Ok(0)
}

pub fn q_poly(ctx: &Context, word: &str, args: &AlphabetArgs) -> Result<i32> {
    let alphabet = alphabet_for_words(args, &[word])?;
    ctx.check_k(alphabet.size())?;
    let w = alphabet.parse_word(word)?;
    ctx.check_n(w.len(), "word length")?;
    let q = q_polynomial(&w)?;
    let value = json!({
        "word": word,
        "alphabet": alphabet,
        "terms": poly_json(&alphabet, &q),
    });
    emit(ctx, format!("{}\n", q.format(&alphabet)), value);
    Ok(0)
}

pub fn fundamental_matrix(ctx: &Context, args: &FormationArgs) -> Result<i32> {
    let Some(spec) = context::formation(ctx, args)? else {
        bail!("a formation is required: pass --config or --preset/-j with -p and -n");
    };
    let formation = Formation::new(spec, ctx.exec)?;
    let m = formation.fundamental_matrix(ctx.exec)?;
    let value = serde_json::to_value(&m)?;
    emit(ctx, m.format_text(), value);
    Ok(0)
}
