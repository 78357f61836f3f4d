use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{CdType, ExtCdType};
use crate::prime_base::{ExtInt, PrimeFn, PrimeSet};

#[derive(Serialize, Deserialize)]
struct Wire {
    kind: String,
    zero: bool,
    #[serde(rename = "S", skip_serializing_if = "Option::is_none", default)]
    s: Option<PrimeSet>,
    #[serde(rename = "D", skip_serializing_if = "Option::is_none", default)]
    def: Option<PrimeSet>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    d: Option<PrimeFn<ExtInt>>,
}

fn wire(t: Option<&ExtCdType>) -> Wire {
    Wire {
        kind: "cdtype".into(),
        zero: t.is_none(),
        s: t.map(|t| t.s.clone()),
        def: t.map(|t| t.def.clone()),
        d: t.map(|t| t.d.clone()),
    }
}

fn unwire(w: Wire) -> Result<Option<ExtCdType>, String> {
    if w.kind != "cdtype" {
        return Err(format!("expected kind \"cdtype\", found {:?}", w.kind));
    }
    if w.zero {
        return Ok(None);
    }
    match (w.s, w.def, w.d) {
        (Some(s), Some(def), Some(d)) => ExtCdType::new(s, def, d).map(Some).map_err(|e| e.to_string()),
        _ => Err("missing S, D or d".into()),
    }
}

impl Serialize for CdType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            CdType::Zero => wire(None),
            CdType::Positive(t) => wire(Some(t)),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CdType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match unwire(Wire::deserialize(d)?).map_err(serde::de::Error::custom)? {
            None => Ok(CdType::Zero),
            Some(t) => t.positive().map_err(serde::de::Error::custom),
        }
    }
}

impl Serialize for ExtCdType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        wire(Some(self)).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExtCdType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match unwire(Wire::deserialize(d)?).map_err(serde::de::Error::custom)? {
            None => Ok(ExtCdType::constant(ExtInt::ZERO)),
            Some(t) => Ok(t),
        }
    }
}
