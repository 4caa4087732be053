//! Versioned JSON page dumps.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::coefficients::CyclicModule;
use crate::error::{Result, SsError};
use crate::page::{Alphabet, CellKey, Grading, Monomial, Page, Summand, Transform, Window};

pub const SCHEMA: &str = "ssforge-page/1";

#[derive(Serialize, Deserialize)]
struct SummandDump {
    label: String,
    module: CyclicModule,
    alphabet: Alphabet,
    exponents: [i64; 3],
    #[serde(default, skip_serializing_if = "is_zero_u8")]
    divided_prefix: u8,
    base: Vec<i32>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    tainted: bool,
}

fn is_zero_u8(v: &u8) -> bool {
    *v == 0
}

#[derive(Serialize, Deserialize)]
struct CellDump {
    stem: i64,
    filt: i64,
    #[serde(default, skip_serializing_if = "is_zero_i64")]
    y: i64,
    summands: Vec<SummandDump>,
}

fn is_zero_i64(v: &i64) -> bool {
    *v == 0
}

#[derive(Serialize, Deserialize)]
struct PageDump {
    schema: String,
    preset: String,
    height: u32,
    grading: Grading,
    page: u32,
    window: Window,
    padded: Window,
    transform: Transform,
    cells: Vec<CellDump>,
}

fn dump(p: &Page) -> PageDump {
    PageDump {
        schema: SCHEMA.to_string(),
        preset: p.preset.clone(),
        height: p.height,
        grading: p.grading,
        page: p.r,
        window: p.window,
        padded: p.padded,
        transform: p.transform,
        cells: p
            .cells
            .iter()
            .map(|(k, v)| CellDump {
                stem: k.stem,
                filt: k.filt,
                y: k.y,
                summands: v
                    .iter()
                    .map(|s| SummandDump {
                        label: s.label.clone(),
                        module: s.module,
                        alphabet: s.generator.alphabet,
                        exponents: s.generator.exps,
                        divided_prefix: s.generator.divided,
                        base: s.base.clone(),
                        tainted: s.tainted,
                    })
                    .collect(),
            })
            .collect(),
    }
}

/// JSON value with keys sorted at every level.
pub fn page_to_value(p: &Page) -> Value {
    // serde_json's default map is ordered, so keys come out sorted
    serde_json::to_value(dump(p)).expect("page dump is always representable")
}

pub fn page_to_json(p: &Page) -> String {
    let mut s = serde_json::to_string_pretty(&page_to_value(p)).expect("serializable");
    s.push('\n');
    s
}

pub fn page_from_json(text: &str) -> Result<Page> {
    let d: PageDump = serde_json::from_str(text).map_err(|e| SsError::Json(e.to_string()))?;
    if d.schema != SCHEMA {
        return Err(SsError::Json(format!("unsupported schema {}", d.schema)));
    }
    let mut page = Page::empty(&d.preset, d.height, d.grading, d.window, d.padded);
    page.r = d.page;
    page.transform = d.transform;
    for c in d.cells {
        let key = CellKey::with_y(c.stem, c.filt, c.y);
        let v = c
            .summands
            .into_iter()
            .map(|s| Summand {
                generator: Monomial { alphabet: s.alphabet, exps: s.exponents, divided: s.divided_prefix },
                module: s.module,
                base: s.base,
                label: s.label,
                tainted: s.tainted,
            })
            .collect();
        page.cells.insert(key, v);
    }
    page.audit()?;
    Ok(page)
}

/// Serializes any report with sorted keys.
pub fn to_sorted_json<T: Serialize>(v: &T) -> String {
    let value = serde_json::to_value(v).expect("serializable report");
    let mut s = serde_json::to_string_pretty(&value).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::RingContext;
    use crate::presets::{build, default_window, PresetId};

    #[test]
    fn round_trip_every_preset() {
        let ctx = RingContext::new(2).unwrap();
        for id in [
            PresetId::HfpssEn,
            PresetId::TateEn,
            PresetId::TateEnModIk(2),
            PresetId::TateVkinv(1),
            PresetId::HossEnModIn,
            PresetId::HfpssIen,
            PresetId::PicSs,
        ] {
            let ss = build(id, &ctx, default_window(id, &ctx)).unwrap();
            for p in [ss.e2.clone(), ss.einf().unwrap()] {
                let text = page_to_json(&p);
                assert_eq!(page_from_json(&text).unwrap(), p, "{id}");
                assert_eq!(page_to_json(&page_from_json(&text).unwrap()), text);
            }
        }
    }

    #[test]
    fn keys_are_sorted() {
        let ctx = RingContext::new(1).unwrap();
        let ss = build(PresetId::HfpssEn, &ctx, Window::new((0, 4), (0, 2)).unwrap()).unwrap();
        let text = page_to_json(&ss.e2);
        let first_keys: Vec<_> = text.lines().filter(|l| l.starts_with("  \"")).collect();
        let mut sorted = first_keys.clone();
        sorted.sort();
        assert_eq!(first_keys, sorted);
        assert!(text.contains("\"schema\": \"ssforge-page/1\""));
    }

    #[test]
    fn rejects_foreign_schema() {
        assert!(page_from_json("{\"schema\":\"other\"}").is_err());
        assert!(page_from_json("not json").is_err());
    }
}
