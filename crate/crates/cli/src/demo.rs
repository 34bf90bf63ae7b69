use std::io::Write;

use anyhow::{anyhow, bail, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sccat::compact::{conjugate, counit, trace, unit};
use sccat::feedback::{additive_trace, multiplicative_trace_rel, parse_block_relation, render, sample_trajectories, Relation};
use sccat::laws::{solve_scalar, teleport_sides, trace_projector_sides};
use sccat::semiring::{ComplexSupport, NonNegEmbedding, NonNegSupport, SemiringHom};
use sccat::transfer::LiftedFunctor;
use sccat::{ComplexRational, Morphism, Semiring, TensorObject};

const DEFAULT_NETWORK: &str = include_str!("../examples/network.rel");

fn scalar_text<S: Semiring>(s: Option<S>) -> String {
    s.map_or_else(|| "any".to_string(), |s| s.to_string())
}

pub fn teleport(matrix: Option<&str>, out: &mut impl Write) -> Result<()> {
    let f: Morphism<ComplexRational> = Morphism::parse_literal(matrix.unwrap_or("[[0,1],[1,0]] : 2 -> 2"))?;
    let xi = conjugate(&f);
    let (lhs, rhs) = teleport_sides(&f, &xi)?;
    let fit = solve_scalar(&lhs, &rhs);
    writeln!(out, "f      = {f}")?;
    writeln!(out, "xi     = f_* = {xi}")?;
    writeln!(out, "lhs    = f (x) (name(1) . coname(xi))")?;
    writeln!(out, "       = {lhs}")?;
    writeln!(out, "rhs    = sigma . (P_1 (x) 1) . (1 (x) P_f)")?;
    writeln!(out, "       = {rhs}")?;
    writeln!(out, "lhs = s . rhs: {}", if fit.holds { "solvable" } else { "no scalar fits" })?;
    writeln!(out, "s = {}", scalar_text(fit.scalar))?;
    Ok(())
}

/// Splits a morphism `A ⊗ C -> B ⊗ C` at its last factor.
fn split_last(f: &Morphism<ComplexRational>) -> Result<(TensorObject, TensorObject, TensorObject)> {
    let (dom, cod) = (f.dom().factors(), f.cod().factors());
    match (dom.split_last(), cod.split_last()) {
        (Some((c, a)), Some((c2, b))) if c == c2 => {
            Ok((TensorObject::new(a.to_vec()), TensorObject::new(b.to_vec()), TensorObject::new(vec![*c])))
        }
        _ => bail!("the domain and codomain of `{f}` must end in the same factor"),
    }
}

pub fn trace_projectors(matrix: Option<&str>, out: &mut impl Write) -> Result<()> {
    let default = "[[1,2,0,1],[0,1,i,0],[3,0,1,0],[0,1,0,2]] : 2*2 -> 2*2";
    let f: Morphism<ComplexRational> = Morphism::parse_literal(matrix.unwrap_or(default))?;
    let (a, b, c) = split_last(&f)?;
    let tr = trace(&f, &a, &b, &c)?;
    let (lhs, rhs) = trace_projector_sides(&f, &a, &b, &c, &Morphism::identity(&c))?;
    let fit = solve_scalar(&lhs, &rhs);
    // Closing the feedback wires again multiplies by the loop value d², once per projector.
    let close = Morphism::identity(&b).tensor(&counit(&c));
    let open = Morphism::identity(&a).tensor(&unit(&c.dual()));
    let closed = close.compose(&rhs)?.compose(&open)?;
    let d = ComplexRational::from_count(c.total_dim() as u64);
    let recovered = closed.scale_by(&d.mul(&d).inverse().map_err(|e| anyhow!("{e}"))?);
    writeln!(out, "f            = {f}")?;
    writeln!(out, "split        A = {a}, B = {b}, C = {c}")?;
    writeln!(out, "Tr(f)        = {tr}")?;
    writeln!(out, "sandwich     = (1 (x) P) . (f (x) 1) . (1 (x) P)")?;
    writeln!(out, "             = {rhs}")?;
    writeln!(out, "Tr(f) (x) (name(1) . coname(1)) = s . sandwich: s = {}", scalar_text(fit.scalar))?;
    writeln!(out, "recovered    = (1 (x) eps) . sandwich . (1 (x) eta) / {}", d.mul(&d))?;
    writeln!(out, "             = {recovered}")?;
    writeln!(out, "recovered Tr(f) {} Tr(f)", if recovered == tr { "equals" } else { "DIFFERS FROM" })?;
    Ok(())
}

pub fn feedback(input: Option<&str>, seed: u64, out: &mut impl Write) -> Result<()> {
    let r = parse_block_relation(input.unwrap_or(DEFAULT_NETWORK))?;
    writeln!(out, "X = {{{}}}  Y = {{{}}}  Z = {{{}}}", r.x.join(", "), r.y.join(", "), r.z.join(", "))?;
    writeln!(out, "\nadditive trace (some path x -> z1 -> ... -> zn -> y):")?;
    write!(out, "{}", render(&additive_trace(&r), &r.x, &r.y))?;
    writeln!(out, "\nmultiplicative trace of R_XY x R_ZZ (some z with (x,z) -> (y,z)):")?;
    if r.x.is_empty() || r.y.is_empty() || r.z.is_empty() {
        writeln!(out, "(empty: a set is empty)")?;
    } else {
        let product = r.xy.to_matrix().tensor(&r.zz.to_matrix());
        let tr = multiplicative_trace_rel(&product, r.x.len(), r.y.len(), r.z.len())?;
        write!(out, "{}", render(&Relation::from_matrix(&tr), &r.x, &r.y))?;
    }
    writeln!(out, "\ntrajectories (seed {seed}):")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in sample_trajectories(&r, &mut rng, 5, 12) {
        writeln!(out, "  {t}")?;
    }
    Ok(())
}

fn image<H: SemiringHom>(hom: H, text: &str) -> Result<String> {
    let m: Morphism<H::Source> = Morphism::parse_literal(text)?;
    Ok(LiftedFunctor::new(hom).apply(&m).to_string())
}

/// The image of a matrix literal under the lifted homomorphism `hom`.
pub fn transfer_image(hom: &str, text: &str) -> Result<String> {
    match hom {
        "nnrat-bool" => image(NonNegSupport, text),
        "crat-bool" => image(ComplexSupport, text),
        "nnrat-crat" => image(NonNegEmbedding, text),
        _ => bail!("unknown homomorphism `{hom}`"),
    }
}
