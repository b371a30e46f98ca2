//! Versioned JSON serialization for every core value, including witnesses.
//! The envelope is `{"format_version": 1, "kind": "...", "payload": ...}`;
//! decoding re-validates through the normal constructors and reports
//! failures with a JSON-pointer path.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::fincat::{product_category, FinCat, IsoWitness, MorId};
use crate::functor::{fully_faithful, Functor, NatTrans, WeakEquivalence};
use crate::laxmon::{LaxMonoidalFunctor, StrongWitnesses};
use crate::monoidal::{
    assemble_monoidal, AssociatorData, MonoidalCategory, TensorData, UnitData, UnitorData,
};
use crate::presheaf::{FinSet, Presheaf, SetFn};
use crate::transport::TransportedMonoidal;

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JsonError {
    #[error("{pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("/format_version: unsupported format_version {found} (expected {FORMAT_VERSION})")]
    Version { found: u64 },
}

fn schema(pointer: &str, message: impl Into<String>) -> JsonError {
    JsonError::Schema {
        pointer: pointer.to_string(),
        message: message.into(),
    }
}

/// Any value the tool can write to or read from a `.cat.json` file.
#[derive(Debug, Clone)]
pub enum Artifact {
    Category(Arc<FinCat>),
    Monoidal(Arc<MonoidalCategory>),
    Functor(Functor),
    NatTrans(NatTrans),
    Lax(LaxMonoidalFunctor),
    Weq(WeakEquivalence),
    Transported(TransportedMonoidal),
    Presheaf(Presheaf),
}

impl Artifact {
    pub fn kind(&self) -> &'static str {
        match self {
            Artifact::Category(_) => "category",
            Artifact::Monoidal(_) => "monoidal_category",
            Artifact::Functor(_) => "functor",
            Artifact::NatTrans(_) => "nat_trans",
            Artifact::Lax(_) => "lax_monoidal_functor",
            Artifact::Weq(_) => "weak_equivalence",
            Artifact::Transported(_) => "transported_monoidal",
            Artifact::Presheaf(_) => "presheaf",
        }
    }
}

// ---------------------------------------------------------------------------
// Encoding

fn iso_value(w: &IsoWitness) -> Value {
    json!([w.forward, w.backward])
}

pub fn category_value(c: &FinCat) -> Value {
    let morphisms: Vec<Value> = c.morphisms().map(|f| json!([c.src(f), c.tgt(f)])).collect();
    let identity: Vec<MorId> = c.objects().map(|x| c.identity(x)).collect();
    let nm = c.n_morphisms();
    let mut compose = Vec::with_capacity(nm * nm);
    for f in 0..nm {
        for g in 0..nm {
            compose.push(match c.compose(f, g) {
                Some(h) => json!(h),
                None => Value::Null,
            });
        }
    }
    json!({
        "n_objects": c.n_objects(),
        "morphisms": morphisms,
        "identity": identity,
        "compose": compose,
    })
}

pub fn monoidal_value(m: &MonoidalCategory) -> Value {
    let base = m.base();
    let n = base.n_objects();
    let nm = base.n_morphisms();
    let mut tensor_obj = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            tensor_obj.push(m.tensor_obj(x, y));
        }
    }
    let mut tensor_mor = Vec::with_capacity(nm * nm);
    for f in 0..nm {
        for g in 0..nm {
            tensor_mor.push(m.tensor_mor(f, g));
        }
    }
    let lunitor: Vec<Value> = (0..n).map(|x| iso_value(&m.lunitor_at(x))).collect();
    let runitor: Vec<Value> = (0..n).map(|x| iso_value(&m.runitor_at(x))).collect();
    let mut assoc = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                assoc.push(iso_value(&m.assoc_at(x, y, z)));
            }
        }
    }
    json!({
        "base": category_value(base),
        "unit": m.unit(),
        "tensor_obj": tensor_obj,
        "tensor_mor": tensor_mor,
        "lunitor": lunitor,
        "runitor": runitor,
        "assoc": assoc,
    })
}

pub fn functor_value(f: &Functor) -> Value {
    json!({
        "dom": category_value(f.dom()),
        "cod": category_value(f.cod()),
        "omap": f.omap(),
        "mmap": f.mmap(),
    })
}

fn nat_trans_value(t: &NatTrans) -> Value {
    json!({
        "source": functor_value(t.source()),
        "target": functor_value(t.target()),
        "components": t.components(),
    })
}

fn lax_value(l: &LaxMonoidalFunctor) -> Value {
    json!({
        "dom": monoidal_value(l.dom()),
        "cod": monoidal_value(l.cod()),
        "omap": l.functor().omap(),
        "mmap": l.functor().mmap(),
        "mu": l.mu(),
        "eps": l.eps(),
    })
}

fn weq_value(w: &WeakEquivalence) -> Value {
    json!({
        "functor": functor_value(&w.functor),
        "section": w.section,
        "eta": w.eta.iter().map(iso_value).collect::<Vec<_>>(),
    })
}

fn transported_value(t: &TransportedMonoidal) -> Value {
    json!({
        "monoidal": monoidal_value(&t.monoidal),
        "h_mon": lax_value(&t.h_mon),
        "strong": { "mu_inv": t.strong.mu_inv, "eps_inv": t.strong.eps_inv },
        "weq": weq_value(&t.weq),
    })
}

fn presheaf_value(p: &Presheaf) -> Value {
    let base = p.base();
    let at: Vec<Value> = base.objects().map(|c| json!(p.at(c).labels)).collect();
    let action: Vec<Value> = base
        .morphisms()
        .map(|f| {
            let a = p.action(f);
            json!({ "map": a.map, "cod": a.cod })
        })
        .collect();
    json!({
        "base": category_value(base),
        "at": at,
        "action": action,
    })
}

pub fn artifact_value(a: &Artifact) -> Value {
    let payload = match a {
        Artifact::Category(c) => category_value(c),
        Artifact::Monoidal(m) => monoidal_value(m),
        Artifact::Functor(f) => functor_value(f),
        Artifact::NatTrans(t) => nat_trans_value(t),
        Artifact::Lax(l) => lax_value(l),
        Artifact::Weq(w) => weq_value(w),
        Artifact::Transported(t) => transported_value(t),
        Artifact::Presheaf(p) => presheaf_value(p),
    };
    json!({
        "format_version": FORMAT_VERSION,
        "kind": a.kind(),
        "payload": payload,
    })
}

pub fn to_json(a: &Artifact) -> String {
    let mut s = serde_json::to_string_pretty(&artifact_value(a)).expect("serializable value");
    s.push('\n');
    s
}

// ---------------------------------------------------------------------------
// Decoding, with JSON-pointer paths in every error.

struct Dec<'a> {
    v: &'a Value,
    path: String,
}

impl<'a> Dec<'a> {
    fn child(&self, seg: &str, v: &'a Value) -> Dec<'a> {
        let escaped = seg.replace('~', "~0").replace('/', "~1");
        Dec {
            v,
            path: format!("{}/{}", self.path, escaped),
        }
    }

    fn field(&self, name: &str) -> Result<Dec<'a>, JsonError> {
        match self.v.get(name) {
            Some(v) => Ok(self.child(name, v)),
            None => Err(schema(&self.path, format!("missing field `{name}`"))),
        }
    }

    fn array(&self) -> Result<Vec<Dec<'a>>, JsonError> {
        match self.v.as_array() {
            Some(items) => Ok(items
                .iter()
                .enumerate()
                .map(|(i, v)| self.child(&i.to_string(), v))
                .collect()),
            None => Err(schema(&self.path, "expected an array")),
        }
    }

    fn usize(&self) -> Result<usize, JsonError> {
        self.v
            .as_u64()
            .map(|u| u as usize)
            .ok_or_else(|| schema(&self.path, "expected a non-negative integer"))
    }

    fn opt_usize(&self) -> Result<Option<usize>, JsonError> {
        if self.v.is_null() {
            Ok(None)
        } else {
            self.usize().map(Some)
        }
    }

    fn string(&self) -> Result<&'a str, JsonError> {
        self.v
            .as_str()
            .ok_or_else(|| schema(&self.path, "expected a string"))
    }

    fn usize_vec(&self) -> Result<Vec<usize>, JsonError> {
        self.array()?.iter().map(Dec::usize).collect()
    }

    fn iso(&self) -> Result<IsoWitness, JsonError> {
        let pair = self.array()?;
        if pair.len() != 2 {
            return Err(schema(&self.path, "expected a [forward, backward] pair"));
        }
        Ok(IsoWitness {
            forward: pair[0].usize()?,
            backward: pair[1].usize()?,
        })
    }
}

fn decode_category(d: &Dec) -> Result<Arc<FinCat>, JsonError> {
    let n_objects = d.field("n_objects")?.usize()?;
    let morphisms: Vec<(usize, usize)> = d
        .field("morphisms")?
        .array()?
        .iter()
        .map(|m| {
            let pair = m.array()?;
            if pair.len() != 2 {
                return Err(schema(&m.path, "expected a [src, tgt] pair"));
            }
            Ok((pair[0].usize()?, pair[1].usize()?))
        })
        .collect::<Result<_, _>>()?;
    let identity = d.field("identity")?.usize_vec()?;
    let compose = d
        .field("compose")?
        .array()?
        .iter()
        .map(Dec::opt_usize)
        .collect::<Result<_, _>>()?;
    FinCat::from_tables(n_objects, morphisms, identity, compose)
        .map(Arc::new)
        .map_err(|e| schema(&d.path, format!("not a category: {e}")))
}

fn decode_monoidal(d: &Dec) -> Result<Arc<MonoidalCategory>, JsonError> {
    let base = decode_category(&d.field("base")?)?;
    let n = base.n_objects();
    let nm = base.n_morphisms();
    let unit = d.field("unit")?.usize()?;
    let tensor_obj = d.field("tensor_obj")?.usize_vec()?;
    let tensor_mor = d.field("tensor_mor")?.usize_vec()?;
    if tensor_obj.len() != n * n {
        return Err(schema(&d.field("tensor_obj")?.path, "wrong tensor_obj length"));
    }
    if tensor_mor.len() != nm * nm {
        return Err(schema(&d.field("tensor_mor")?.path, "wrong tensor_mor length"));
    }
    let prod = product_category(&base, &base);
    let omap = prod
        .cat
        .objects()
        .map(|p| {
            let (x, y) = prod.obj_parts(p);
            tensor_obj[x * n + y]
        })
        .collect();
    let mmap = prod
        .cat
        .morphisms()
        .map(|mp| {
            let (f, g) = prod.mor_parts(mp);
            tensor_mor[f * nm + g]
        })
        .collect();
    let tensor = Functor::new(Arc::clone(&prod.cat), Arc::clone(&base), omap, mmap)
        .map_err(|e| schema(&d.path, format!("tensor: {e}")))?;
    let iso_list = |name: &str, want: usize| -> Result<Vec<IsoWitness>, JsonError> {
        let f = d.field(name)?;
        let items = f.array()?;
        if items.len() != want {
            return Err(schema(&f.path, format!("expected {want} entries")));
        }
        items.iter().map(Dec::iso).collect()
    };
    let left = iso_list("lunitor", n)?;
    let right = iso_list("runitor", n)?;
    let components = iso_list("assoc", n * n * n)?;
    assemble_monoidal(
        TensorData { tensor },
        UnitData { unit },
        UnitorData { left, right },
        AssociatorData { components },
    )
    .map(Arc::new)
    .map_err(|e| schema(&d.path, format!("monoidal layers rejected the data: {e}")))
}

fn decode_functor(d: &Dec) -> Result<Functor, JsonError> {
    let dom = decode_category(&d.field("dom")?)?;
    let cod = decode_category(&d.field("cod")?)?;
    let omap = d.field("omap")?.usize_vec()?;
    let mmap = d.field("mmap")?.usize_vec()?;
    Functor::new(dom, cod, omap, mmap).map_err(|e| schema(&d.path, format!("functor: {e}")))
}

fn decode_nat_trans(d: &Dec) -> Result<NatTrans, JsonError> {
    let source = decode_functor(&d.field("source")?)?;
    let target = decode_functor(&d.field("target")?)?;
    if source.dom() != target.dom() || source.cod() != target.cod() {
        return Err(schema(&d.path, "source and target functors are not parallel"));
    }
    let components = d.field("components")?.usize_vec()?;
    NatTrans::new(source, target, components)
        .map_err(|e| schema(&d.path, format!("nat_trans: {e}")))
}

fn decode_lax(d: &Dec) -> Result<LaxMonoidalFunctor, JsonError> {
    let dom = decode_monoidal(&d.field("dom")?)?;
    let cod = decode_monoidal(&d.field("cod")?)?;
    let omap = d.field("omap")?.usize_vec()?;
    let mmap = d.field("mmap")?.usize_vec()?;
    let functor = Functor::new(
        Arc::clone(dom.base()),
        Arc::clone(cod.base()),
        omap,
        mmap,
    )
    .map_err(|e| schema(&d.path, format!("functor: {e}")))?;
    let mu = d.field("mu")?.usize_vec()?;
    let eps = d.field("eps")?.usize()?;
    let n = dom.base().n_objects();
    if mu.len() != n * n {
        return Err(schema(&d.field("mu")?.path, "wrong mu length"));
    }
    if eps >= cod.base().n_morphisms() {
        return Err(schema(&d.field("eps")?.path, "eps out of range"));
    }
    if let Some(&bad) = mu.iter().find(|&&m| m >= cod.base().n_morphisms()) {
        return Err(schema(
            &d.field("mu")?.path,
            format!("mu component m{bad} out of range"),
        ));
    }
    Ok(LaxMonoidalFunctor::new(dom, cod, functor, mu, eps))
}

fn decode_weq(d: &Dec) -> Result<WeakEquivalence, JsonError> {
    let functor = decode_functor(&d.field("functor")?)?;
    let section = d.field("section")?.usize_vec()?;
    let eta = d
        .field("eta")?
        .array()?
        .iter()
        .map(Dec::iso)
        .collect::<Result<Vec<_>, _>>()?;
    let nd = functor.cod().n_objects();
    if section.len() != nd {
        return Err(schema(&d.field("section")?.path, "wrong section length"));
    }
    if eta.len() != nd {
        return Err(schema(&d.field("eta")?.path, "wrong eta length"));
    }
    let nm = functor.cod().n_morphisms();
    if let Some(w) = eta.iter().find(|w| w.forward >= nm || w.backward >= nm) {
        return Err(schema(
            &d.field("eta")?.path,
            format!("eta witness (m{}, m{}) out of range", w.forward, w.backward),
        ));
    }
    if let Some(&c) = section.iter().find(|&&c| c >= functor.dom().n_objects()) {
        return Err(schema(&d.field("section")?.path, format!("object x{c} out of range")));
    }
    let ff = fully_faithful(&functor)
        .evidence
        .ok_or_else(|| schema(&d.path, "functor is not fully faithful"))?;
    let w = WeakEquivalence {
        functor,
        ff,
        section,
        eta,
    };
    let report = w.check();
    if !report.is_ok() {
        return Err(schema(&d.path, format!("weak equivalence laws fail:\n{report}")));
    }
    Ok(w)
}

fn decode_transported(d: &Dec) -> Result<TransportedMonoidal, JsonError> {
    let monoidal = decode_monoidal(&d.field("monoidal")?)?;
    let h_mon = decode_lax(&d.field("h_mon")?)?;
    let strong = d.field("strong")?;
    let strong = StrongWitnesses {
        mu_inv: strong.field("mu_inv")?.usize_vec()?,
        eps_inv: strong.field("eps_inv")?.usize()?,
    };
    let weq = decode_weq(&d.field("weq")?)?;
    Ok(TransportedMonoidal {
        monoidal,
        h_mon,
        strong,
        weq,
    })
}

fn decode_presheaf(d: &Dec) -> Result<Presheaf, JsonError> {
    let base = decode_category(&d.field("base")?)?;
    let at = d
        .field("at")?
        .array()?
        .iter()
        .map(|labels| {
            Ok(FinSet {
                labels: labels
                    .array()?
                    .iter()
                    .map(|l| l.string().map(str::to_string))
                    .collect::<Result<_, _>>()?,
            })
        })
        .collect::<Result<Vec<_>, JsonError>>()?;
    let action = d
        .field("action")?
        .array()?
        .iter()
        .map(|a| {
            Ok(SetFn {
                map: a.field("map")?.usize_vec()?,
                cod: a.field("cod")?.usize()?,
            })
        })
        .collect::<Result<Vec<_>, JsonError>>()?;
    Presheaf::new(base, at, action).map_err(|e| schema(&d.path, format!("presheaf: {e}")))
}

pub fn from_json(text: &str) -> Result<Artifact, JsonError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| schema("", format!("invalid JSON: {e}")))?;
    let root = Dec {
        v: &value,
        path: String::new(),
    };
    let version = root.field("format_version")?.usize()? as u64;
    if version != FORMAT_VERSION {
        return Err(JsonError::Version { found: version });
    }
    let kind = root.field("kind")?;
    let kind_name = kind.string()?;
    let payload = root.field("payload")?;
    match kind_name {
        "category" => Ok(Artifact::Category(decode_category(&payload)?)),
        "monoidal_category" => Ok(Artifact::Monoidal(decode_monoidal(&payload)?)),
        "functor" => Ok(Artifact::Functor(decode_functor(&payload)?)),
        "nat_trans" => Ok(Artifact::NatTrans(decode_nat_trans(&payload)?)),
        "lax_monoidal_functor" => Ok(Artifact::Lax(decode_lax(&payload)?)),
        "weak_equivalence" => Ok(Artifact::Weq(decode_weq(&payload)?)),
        "transported_monoidal" => Ok(Artifact::Transported(decode_transported(&payload)?)),
        "presheaf" => Ok(Artifact::Presheaf(decode_presheaf(&payload)?)),
        other => Err(schema(&kind.path, format!("unknown kind `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::laxmon::{check_lax_monoidal_functor, is_strong_monoidal};
    use crate::monoidal::check_monoidal_laws;
    use crate::transport::{skeletalize, transport_monoidal};

    #[test]
    fn category_round_trips_on_all_fixtures() {
        for (name, cat) in fixtures::all_categories() {
            let text = to_json(&Artifact::Category(Arc::clone(&cat)));
            match from_json(&text).unwrap() {
                Artifact::Category(back) => assert_eq!(back.as_ref(), cat.as_ref(), "{name}"),
                other => panic!("wrong kind {:?}", other.kind()),
            }
        }
    }

    #[test]
    fn monoidal_round_trips_and_laws_survive() {
        for (name, m) in fixtures::all_monoidal() {
            let m = Arc::new(m);
            let text = to_json(&Artifact::Monoidal(Arc::clone(&m)));
            match from_json(&text).unwrap() {
                Artifact::Monoidal(back) => {
                    assert_eq!(back.as_ref(), m.as_ref(), "{name}");
                    assert!(check_monoidal_laws(&back).is_ok(), "{name}");
                }
                other => panic!("wrong kind {:?}", other.kind()),
            }
        }
    }

    #[test]
    fn transported_z2fat_round_trips_with_live_witnesses() {
        let m = Arc::new(fixtures::z2fat());
        let (_, w) = skeletalize(m.base());
        let t = transport_monoidal(&w, &m).unwrap();
        let text = to_json(&Artifact::Transported(t.clone()));
        let Artifact::Transported(back) = from_json(&text).unwrap() else {
            panic!("wrong kind");
        };
        assert_eq!(back.monoidal.as_ref(), t.monoidal.as_ref());
        assert!(check_monoidal_laws(&back.monoidal).is_ok());
        assert!(check_lax_monoidal_functor(&back.h_mon).is_ok());
        assert!(is_strong_monoidal(&back.h_mon));
        assert!(back.weq.check().is_ok());
        assert_eq!(back.strong.mu_inv, t.strong.mu_inv);
    }

    #[test]
    fn presheaf_and_functor_round_trip() {
        let base = fixtures::bzn(2);
        let p = crate::presheaf::yoneda(&base, 0);
        let text = to_json(&Artifact::Presheaf(p.clone()));
        let Artifact::Presheaf(back) = from_json(&text).unwrap() else {
            panic!("wrong kind");
        };
        assert_eq!(back, p);

        let f = Functor::identity(&base);
        let text = to_json(&Artifact::Functor(f.clone()));
        let Artifact::Functor(back) = from_json(&text).unwrap() else {
            panic!("wrong kind");
        };
        assert_eq!(back, f);

        let t = NatTrans::identity(&f);
        let text = to_json(&Artifact::NatTrans(t.clone()));
        let Artifact::NatTrans(back) = from_json(&text).unwrap() else {
            panic!("wrong kind");
        };
        assert_eq!(back.components(), t.components());
    }

    #[test]
    fn version_mismatch_and_truncation_are_pointered() {
        let m = Arc::new(fixtures::z2d());
        let mut text = to_json(&Artifact::Monoidal(m));
        match from_json(&text.replace("\"format_version\": 1", "\"format_version\": 7")) {
            Err(JsonError::Version { found: 7 }) => {}
            other => panic!("expected version error, got {other:?}"),
        }
        text.truncate(text.len() / 2);
        match from_json(&text) {
            Err(JsonError::Schema { pointer, .. }) => assert_eq!(pointer, ""),
            other => panic!("expected schema error, got {other:?}"),
        }
    }

    #[test]
    fn field_errors_carry_json_pointers() {
        let bad = r#"{"format_version": 1, "kind": "category", "payload": {
            "n_objects": 1, "morphisms": [[0, 0]], "identity": [0]
        }}"#;
        match from_json(bad) {
            Err(JsonError::Schema { pointer, message }) => {
                assert_eq!(pointer, "/payload");
                assert!(message.contains("compose"), "{message}");
            }
            other => panic!("{other:?}"),
        }
        let bad2 = r#"{"format_version": 1, "kind": "category", "payload": {
            "n_objects": 1, "morphisms": [[0, "x"]], "identity": [0], "compose": [0]
        }}"#;
        match from_json(bad2) {
            Err(JsonError::Schema { pointer, .. }) => {
                assert_eq!(pointer, "/payload/morphisms/0/1");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unlawful_monoidal_payload_is_rejected_with_layer_text() {
        // Serialize a lawful structure, then corrupt the associator.
        let m = Arc::new(fixtures::bz2_mon());
        let mut v = artifact_value(&Artifact::Monoidal(m));
        v["payload"]["assoc"][0] = json!([1, 1]);
        match from_json(&serde_json::to_string(&v).unwrap()) {
            Err(JsonError::Schema { pointer, message }) => {
                assert_eq!(pointer, "/payload");
                assert!(message.contains("layer"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }
}
