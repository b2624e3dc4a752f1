use num_rational::Ratio;
use perfectoid_core::adicdisc::{AdicPoint, RationalSubset};
use perfectoid_core::arith::{lift_mod_uniformizer, reduce_mod_uniformizer, AnyElement, FieldConfig, TiltElement, UntiltElement};
use perfectoid_core::polyroots::{charp_root, fw_transfer, mixed_root_refine, newton_polygon, AnyPoly, CharpRoot, Polynomial};
use perfectoid_core::tatealg::{approximate, contract_sample, ContractReport, Verdict, decompose, verify_contract, AnyTate, HomogeneousElement, TateElement};
use perfectoid_core::tiltkit::{sharp, theta, WittVector};
use perfectoid_core::toric::{hypersurface_transfer, sections, Fan, TWeilDivisor};
use perfectoid_core::Error;
use serde_json::{json, Value};

use crate::args::{DiscCmd, Global, ToricCmd, WittCmd};
use crate::input::{check_p, config_or_default, element, find_config, json, ratio, CliResult};

/// Size of the classical part of the verification sample.
pub const SAMPLE_POINTS: usize = 49;

pub struct Output {
    pub json: Value,
    pub text: String,
}

impl Output {
    fn new(json: Value, text: impl Into<String>) -> Self {
        Output { json, text: text.into() }
    }
}

fn elem_out(x: AnyElement) -> Output {
    let text = x.to_string();
    Output::new(x.to_json_value(), text)
}

pub fn poly(arg: &str, g: &Global) -> CliResult<AnyPoly> {
    let p = AnyPoly::from_json_value(&json(arg)?)?;
    let cfg = match &p {
        AnyPoly::Untilt(q) => q.config(),
        AnyPoly::Tilt(q) => q.config(),
    };
    check_p(g, cfg)?;
    Ok(p)
}

fn untilt_poly(arg: &str, g: &Global) -> CliResult<Polynomial<UntiltElement>> {
    match poly(arg, g)? {
        AnyPoly::Untilt(p) => Ok(p),
        AnyPoly::Tilt(_) => Err(Error::InvalidArgument("expected a polynomial over the untilt".into()).into()),
    }
}

fn tilt_poly(arg: &str, g: &Global) -> CliResult<Polynomial<TiltElement>> {
    match poly(arg, g)? {
        AnyPoly::Tilt(p) => Ok(p),
        AnyPoly::Untilt(_) => Err(Error::InvalidArgument("expected a polynomial over the tilt".into()).into()),
    }
}

pub fn tate(arg: &str, g: &Global) -> CliResult<(AnyTate, Option<u64>)> {
    let v = json(arg)?;
    let fallback = config_or_default(g, None)?;
    let (t, d) = AnyTate::from_json_value(&v, Some((fallback, 1)))?;
    let cfg = match &t {
        AnyTate::Untilt(x) => x.config(),
        AnyTate::Tilt(x) => x.config(),
    };
    check_p(g, cfg)?;
    Ok((t, d))
}

fn untilt_tate(arg: &str, g: &Global) -> CliResult<TateElement<UntiltElement>> {
    match tate(arg, g)?.0 {
        AnyTate::Untilt(x) => Ok(x),
        AnyTate::Tilt(_) => Err(Error::InvalidArgument("expected an untilt series".into()).into()),
    }
}

fn tilt_tate(arg: &str, g: &Global) -> CliResult<TateElement<TiltElement>> {
    match tate(arg, g)?.0 {
        AnyTate::Tilt(x) => Ok(x),
        AnyTate::Untilt(_) => Err(Error::InvalidArgument("expected a tilt series".into()).into()),
    }
}

fn homogeneous(arg: &str, g: &Global) -> CliResult<HomogeneousElement<UntiltElement>> {
    let (t, d) = tate(arg, g)?;
    let AnyTate::Untilt(f) = t else {
        return Err(Error::InvalidArgument("expected an untilt series".into()).into());
    };
    Ok(match d {
        Some(d) => HomogeneousElement::new(f, d)?,
        None => HomogeneousElement::from_element(f)?,
    })
}

pub fn sharp_cmd(input: &str, g: &Global) -> CliResult<Output> {
    let x = element(input, g)?.into_tilt()?;
    let target = g.prec.unwrap_or(x.config().prec());
    Ok(elem_out(AnyElement::Untilt(sharp(&x, target)?)))
}

pub fn tilt_reduce(input: &str, g: &Global) -> CliResult<Output> {
    Ok(elem_out(match element(input, g)? {
        AnyElement::Untilt(u) => AnyElement::Tilt(reduce_mod_uniformizer(&u)),
        AnyElement::Tilt(t) => AnyElement::Untilt(lift_mod_uniformizer(&t)),
    }))
}

fn witt(arg: &str, g: &Global) -> CliResult<WittVector> {
    let w = WittVector::from_json_value(&json(arg)?)?;
    check_p(g, w.config())?;
    Ok(w)
}

fn witt_out(w: WittVector) -> Output {
    let parts: Vec<String> = w.components().iter().map(|c| c.to_string()).collect();
    Output::new(w.to_json_value(), format!("[{}]", parts.join(", ")))
}

pub fn theta_cmd(input: &str, g: &Global) -> CliResult<Output> {
    Ok(elem_out(AnyElement::Untilt(theta(&witt(input, g)?)?)))
}

pub fn witt_cmd(cmd: &WittCmd, g: &Global) -> CliResult<Output> {
    Ok(witt_out(match cmd {
        WittCmd::Add { a, b } => witt(a, g)?.add(&witt(b, g)?)?,
        WittCmd::Mul { a, b } => witt(a, g)?.mul(&witt(b, g)?)?,
        WittCmd::Teichmuller { length, input } => WittVector::teichmuller(&element(input, g)?.into_tilt()?, *length)?,
    }))
}

pub fn newton_cmd(input: &str, g: &Global) -> CliResult<Output> {
    let np = match poly(input, g)? {
        AnyPoly::Untilt(p) => newton_polygon(&p)?,
        AnyPoly::Tilt(p) => newton_polygon(&p)?,
    };
    let mut lines: Vec<String> = np.segments.iter().map(|s| format!("slope {} mult {}", s.valuation, s.mult)).collect();
    if np.zero_roots > 0 {
        lines.push(format!("slope inf mult {}", np.zero_roots));
    }
    Ok(Output::new(np.to_json_value(), lines.join("\n")))
}

pub fn transfer_cmd(n: u32, input: &str, g: &Global) -> CliResult<Output> {
    let q = fw_transfer(&tilt_poly(input, g)?, n)?;
    let text = q.to_string();
    Ok(Output::new(q.to_json_value(), text))
}

pub fn root_cmd(input: &str, g: &Global) -> CliResult<Output> {
    match poly(input, g)? {
        AnyPoly::Untilt(p) => {
            let r = mixed_root_refine(&p)?;
            let text = format!("root {}\nstages {}\nresidual valuation {}", r.root, r.stages.len(), r.residual);
            Ok(Output::new(
                json!({
                    "root": AnyElement::Untilt(r.root).to_json_value(),
                    "stages": r.stages.len(),
                    "residual": r.residual.to_string(),
                }),
                text,
            ))
        }
        AnyPoly::Tilt(p) => match charp_root(&p)? {
            CharpRoot::Found(r) => {
                let text = format!("root {r}");
                Ok(Output::new(json!({ "root": AnyElement::Tilt(r).to_json_value() }), text))
            }
            CharpRoot::None => Ok(Output::new(json!({ "root": null }), "no root")),
        },
    }
}

pub fn decompose_cmd(c: u32, input: &str, g: &Global) -> CliResult<Output> {
    let gs = decompose(&untilt_tate(input, g)?, c)?;
    let text = gs.iter().enumerate().map(|(j, x)| format!("g{j} = {x}")).collect::<Vec<_>>().join("\n");
    Ok(Output::new(json!({ "components": gs.iter().map(|x| x.to_json_value()).collect::<Vec<_>>() }), text))
}

fn report_text(r: &ContractReport) -> String {
    let bad = r.points.iter().filter(|p| p.lemma != Verdict::Pass || p.remark != Verdict::Pass).count();
    format!("verdict {} over {} points ({} not passing)", r.verdict, r.points.len(), bad)
}

pub fn approx_cmd(c: &str, eps: &str, input: &str, g: &Global) -> CliResult<Output> {
    let (c, eps) = (ratio(c, "c")?, ratio(eps, "eps")?);
    let f = homogeneous(input, g)?;
    let a = approximate(&f, c, eps)?;
    let pts = contract_sample(f.config(), f.nvars(), SAMPLE_POINTS)?;
    let rep = verify_contract(f.elem(), a.g.elem(), c, eps, &pts)?;
    let text = format!("g = {}\nsteps {}\n{}", a.g.elem(), a.steps, report_text(&rep));
    Ok(Output::new(
        json!({
            "g": a.g.to_json_value(),
            "steps": a.steps,
            "exact_to": a.exact_to.map(|r| r.to_string()),
            "report": rep.to_json_value(),
        }),
        text,
    ))
}

pub fn verify_cmd(c: &str, eps: &str, f: &str, gg: &str, g: &Global) -> CliResult<Output> {
    let (c, eps) = (ratio(c, "c")?, ratio(eps, "eps")?);
    let f = untilt_tate(f, g)?;
    let h = tilt_tate(gg, g)?;
    let pts = contract_sample(f.config(), f.nvars(), SAMPLE_POINTS)?;
    let rep = verify_contract(&f, &h, c, eps, &pts)?;
    let text = report_text(&rep);
    Ok(Output::new(rep.to_json_value(), text))
}

fn point(v: &Value, cfg: FieldConfig) -> CliResult<AdicPoint> {
    Ok(AdicPoint::from_json_value(v, cfg)?)
}

pub fn disc_cmd(cmd: &DiscCmd, g: &Global) -> CliResult<Output> {
    match cmd {
        DiscCmd::Eval { input, point: pt } => {
            let f = untilt_poly(input, g)?;
            let x = point(&json(pt)?, f.config())?;
            let v = x.eval(&f)?;
            Ok(Output::new(v.to_json_value(), format!("|f({x})| = {}", v.to_json_value())))
        }
        DiscCmd::Member { subset, point: pt } => {
            let sv = json(subset)?;
            let u = RationalSubset::from_json_value(&sv)?;
            let cfg = config_or_default(g, find_config(&sv))?;
            check_p(g, cfg)?;
            let x = point(&json(pt)?, cfg)?;
            let m = u.contains(&x)?;
            Ok(Output::new(json!({ "member": m }), m.to_string()))
        }
        DiscCmd::Specializes { x, y } => {
            let (xv, yv) = (json(x)?, json(y)?);
            let base = find_config(&xv).or_else(|| find_config(&yv));
            let cfg = config_or_default(g, base)?;
            check_p(g, cfg)?;
            let s = point(&xv, cfg)?.specializes(&point(&yv, cfg)?);
            Ok(Output::new(json!({ "specializes": s }), s.to_string()))
        }
    }
}

pub fn fan(arg: &str) -> CliResult<Fan> {
    Ok(Fan::from_json_value(&json(arg)?)?)
}

pub fn toric_cmd(cmd: &ToricCmd, g: &Global) -> CliResult<Output> {
    match cmd {
        ToricCmd::Sections { fan: fa, divisor } => {
            let fan = fan(fa)?;
            let d = TWeilDivisor::from_json_value(&json(divisor)?, &fan)?;
            let p = g.p.unwrap_or(crate::input::DEFAULT_CONFIG.0);
            let pts = sections(&fan, &d, p, g.dencap.unwrap_or(0))?;
            let strs: Vec<Vec<String>> = pts.iter().map(|u| u.iter().map(Ratio::to_string).collect()).collect();
            let text = strs.iter().map(|u| format!("({})", u.join(", "))).collect::<Vec<_>>().join("\n");
            Ok(Output::new(json!({ "count": pts.len(), "points": strs }), format!("{} points\n{text}", pts.len())))
        }
        ToricCmd::Smooth { fan: fa } => {
            let fan = fan(fa)?;
            let (s, c) = (fan.is_smooth(), fan.is_complete()?);
            Ok(Output::new(json!({ "smooth": s, "complete": c }), format!("smooth {s}\ncomplete {c}")))
        }
        ToricCmd::Transfer { input, c, eps, fan: fa } => {
            let (c, eps) = (ratio(c, "c")?, ratio(eps, "eps")?);
            let f = homogeneous(input, g)?;
            let fan = match fa {
                Some(a) => fan(a)?,
                None => Fan::projective_space(f.nvars().saturating_sub(1))?,
            };
            let t = hypersurface_transfer(&fan, &f, c, eps)?;
            let text = format!("g = {}\nh = {}\nfrobenius steps {}\n{}", t.g.elem(), t.h.elem(), t.s, report_text(&t.report));
            Ok(Output::new(
                json!({
                    "g": t.g.to_json_value(),
                    "h": t.h.to_json_value(),
                    "s": t.s,
                    "report": t.report.to_json_value(),
                }),
                text,
            ))
        }
    }
}
