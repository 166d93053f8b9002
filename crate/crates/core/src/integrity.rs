//! Drawing signatures: a public SHA-256 digest plus a password-bound HMAC.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use hmac::{Hmac, KeyInit, Mac};
use sha2::{Digest, Sha256};

use crate::codec::canonical_bytes;
use crate::drawing::{Drawing, DrawingError};
use crate::generators::{place, GenerationError, Reader};
use crate::geometry::{Element, LineStyle, Point};
use crate::placement::Symmetry;
use crate::props::{ModuleTypeId, PropertyValue, Props};

pub const STAMP_TEXT_HEIGHT: f64 = 3.5;
/// Inset of the first stamp from the bottom-left corner of the drawing extent, mm.
pub const STAMP_INSET: f64 = 5.0;
/// Vertical pitch between stacked stamps, mm.
pub const STAMP_PITCH: f64 = 5.0;
const FIELD_SEPARATOR: u8 = 0x1F;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum IntegrityError {
    #[error("field `{0}` is malformed")]
    BadField(&'static str),
    #[error(transparent)]
    Drawing(#[from] DrawingError),
}

pub fn sha256(data: &[u8]) -> [u8; 32] {
    let mut out = [0u8; 32];
    out.copy_from_slice(&Sha256::digest(data));
    out
}

pub fn hmac_sha256(key: &[u8], msg: &[u8]) -> [u8; 32] {
    let mut mac = <Hmac<Sha256> as KeyInit>::new_from_slice(key).expect("HMAC accepts keys of any length");
    mac.update(msg);
    let mut out = [0u8; 32];
    out.copy_from_slice(&mac.finalize().into_bytes());
    out
}

pub fn to_hex(bytes: &[u8]) -> String {
    hex::encode(bytes)
}

/// Decodes exactly 32 bytes written as lowercase hex.
fn from_hex32(s: &str) -> Option<[u8; 32]> {
    if s.bytes().any(|c| c.is_ascii_uppercase()) {
        return None;
    }
    let mut out = [0u8; 32];
    hex::decode_to_slice(s, &mut out).ok()?;
    Some(out)
}

fn is_date(s: &str) -> bool {
    let b = s.as_bytes();
    b.len() == 10
        && b.iter().enumerate().all(|(i, c)| {
            if i == 4 || i == 7 {
                *c == b'-'
            } else {
                c.is_ascii_digit()
            }
        })
        && (1..=12).contains(&s[5..7].parse::<u32>().unwrap_or(0))
        && (1..=31).contains(&s[8..10].parse::<u32>().unwrap_or(0))
}

fn is_time(s: &str) -> bool {
    let b = s.as_bytes();
    b.len() == 8
        && b.iter().enumerate().all(|(i, c)| {
            if i == 2 || i == 5 {
                *c == b':'
            } else {
                c.is_ascii_digit()
            }
        })
        && s[0..2].parse::<u32>().is_ok_and(|h| h < 24)
        && s[3..5].parse::<u32>().is_ok_and(|m| m < 60)
        && s[6..8].parse::<u32>().is_ok_and(|x| x < 60)
}

/// Stamp text shown on the drawing for a signature.
pub fn stamp_text(person: &str, position: &str, date: &str, time: &str) -> String {
    format!("{person} / {position} / {date} {time}")
}

/// Signature geometry: one text line at the module origin. Digest and MAC are
/// carried as properties and never drawn.
pub fn gen_signature(props: &Props) -> Result<Vec<Element>, GenerationError> {
    let r = Reader(props);
    if r.text("person").is_empty() {
        return Err(GenerationError::invalid("person", "must not be empty"));
    }
    if !is_date(r.text("date")) {
        return Err(GenerationError::invalid("date", "expected YYYY-MM-DD"));
    }
    if !is_time(r.text("time")) {
        return Err(GenerationError::invalid("time", "expected HH:MM:SS"));
    }
    for key in ["digest", "mac"] {
        let v = r.text(key);
        if !v.is_empty() && from_hex32(v).is_none() {
            return Err(GenerationError::invalid(key, "expected 64 lowercase hex digits"));
        }
    }
    let text = stamp_text(r.text("person"), r.text("position"), r.text("date"), r.text("time"));
    let local = vec![Element::text(
        Point::ORIGIN,
        STAMP_TEXT_HEIGHT,
        0.0,
        text,
        LineStyle::SOLID,
    )];
    place(local, r.placement(), Symmetry::None)
}

/// Signer's input. The password is used for the MAC and then dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignRequest {
    pub person: String,
    pub position: String,
    pub password: String,
    pub date: String,
    pub time: String,
}

/// SHA-256 over the drawing's canonical bytes with every signature left out.
pub fn drawing_digest(d: &Drawing) -> [u8; 32] {
    sha256(&canonical_bytes(d, true))
}

fn auth_message(digest: &[u8; 32], person: &str, position: &str, date: &str, time: &str) -> Vec<u8> {
    let mut msg = digest.to_vec();
    for f in [person, position, date, time] {
        msg.push(FIELD_SEPARATOR);
        msg.extend_from_slice(f.as_bytes());
    }
    msg
}

/// Appends a signature module; returns its id.
pub fn sign_drawing(d: &mut Drawing, req: &SignRequest) -> Result<u64, IntegrityError> {
    if req.person.is_empty() {
        return Err(IntegrityError::BadField("person"));
    }
    if !is_date(&req.date) {
        return Err(IntegrityError::BadField("date"));
    }
    if !is_time(&req.time) {
        return Err(IntegrityError::BadField("time"));
    }
    let digest = drawing_digest(d);
    let mac = hmac_sha256(
        req.password.as_bytes(),
        &auth_message(&digest, &req.person, &req.position, &req.date, &req.time),
    );
    let existing = d.modules().filter(|m| m.module_type == ModuleTypeId::Signature).count();
    let origin = d.extent.min + Point::new(STAMP_INSET, STAMP_INSET + STAMP_PITCH * existing as f64);
    let mut p = Props::new();
    for (k, v) in [
        ("person", &req.person),
        ("position", &req.position),
        ("date", &req.date),
        ("time", &req.time),
    ] {
        p.insert(k.into(), PropertyValue::text(v));
    }
    p.insert("digest".into(), PropertyValue::text(to_hex(&digest)));
    p.insert("mac".into(), PropertyValue::text(to_hex(&mac)));
    p.insert("origin".into(), PropertyValue::Point(origin));
    Ok(d.add_module(ModuleTypeId::Signature, &p)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Valid,
    Broken,
    Unchecked,
}

impl Check {
    pub fn as_str(self) -> &'static str {
        match self {
            Check::Valid => "valid",
            Check::Broken => "broken",
            Check::Unchecked => "unchecked",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureStatus {
    pub id: u64,
    pub person: String,
    pub integrity: Check,
    pub authenticity: Check,
}

/// Checks every signature. Integrity needs no secret; authenticity is
/// checked only for signers whose password is supplied.
pub fn verify_signatures(d: &Drawing, passwords: &BTreeMap<String, String>) -> Vec<SignatureStatus> {
    let digest = drawing_digest(d);
    d.modules()
        .filter(|m| m.module_type == ModuleTypeId::Signature)
        .map(|m| {
            let person = m.text_prop("person");
            let stored_digest = from_hex32(m.text_prop("digest"));
            let integrity = if stored_digest == Some(digest) {
                Check::Valid
            } else {
                Check::Broken
            };
            let authenticity = match (passwords.get(person), stored_digest) {
                (None, _) => Check::Unchecked,
                (Some(_), None) => Check::Broken,
                (Some(pw), Some(sd)) => {
                    let msg = auth_message(
                        &sd,
                        person,
                        m.text_prop("position"),
                        m.text_prop("date"),
                        m.text_prop("time"),
                    );
                    let mut mac = <Hmac<Sha256> as KeyInit>::new_from_slice(pw.as_bytes()).expect("any key length");
                    mac.update(&msg);
                    match from_hex32(m.text_prop("mac")) {
                        Some(stored) if mac.verify_slice(&stored).is_ok() => Check::Valid,
                        _ => Check::Broken,
                    }
                }
            };
            SignatureStatus {
                id: m.id,
                person: person.into(),
                integrity,
                authenticity,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Rect;

    fn unhex(s: &str) -> Vec<u8> {
        hex::decode(s).unwrap()
    }

    #[test]
    fn rfc4231_vectors() {
        let cases: [(Vec<u8>, Vec<u8>, &str); 5] = [
            (
                vec![0x0b; 20],
                b"Hi There".to_vec(),
                "b0344c61d8db38535ca8afceaf0bf12b881dc200c9833da726e9376c2e32cff7",
            ),
            (
                b"Jefe".to_vec(),
                b"what do ya want for nothing?".to_vec(),
                "5bdcc146bf60754e6a042426089575c75a003f089d2739839dec58b964ec3843",
            ),
            (
                vec![0xaa; 20],
                vec![0xdd; 50],
                "773ea91e36800e46854db8ebd09181a72959098b3ef8c122d9635514ced565fe",
            ),
            (
                unhex("0102030405060708090a0b0c0d0e0f10111213141516171819"),
                vec![0xcd; 50],
                "82558a389a443c0ea4cc819899f2083a85f0faa3e578f8077a2e3ff46729665b",
            ),
            (
                vec![0xaa; 131],
                b"Test Using Larger Than Block-Size Key - Hash Key First".to_vec(),
                "60e431591ee0b67f0d8a26aacbf5b77f8e0bc6213728c5140546040f0ee37f54",
            ),
        ];
        for (key, msg, want) in cases {
            assert_eq!(to_hex(&hmac_sha256(&key, &msg)), want);
        }
    }

    #[test]
    fn sha256_vector() {
        assert_eq!(
            to_hex(&sha256(b"abc")),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    fn req(person: &str, pw: &str) -> SignRequest {
        SignRequest {
            person: person.into(),
            position: "инженер".into(),
            password: pw.into(),
            date: "2024-03-01".into(),
            time: "10:15:00".into(),
        }
    }

    fn pw(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
        pairs.iter().map(|(a, b)| ((*a).into(), (*b).into())).collect()
    }

    #[test]
    fn sign_verify_and_stack() {
        let mut d = Drawing::new(Rect::from_coords(0.0, 0.0, 420.0, 297.0)).unwrap();
        d.add_module(ModuleTypeId::Valve, &Props::new()).unwrap();
        let a = sign_drawing(&mut d, &req("Иванов", "s1")).unwrap();
        let b = sign_drawing(&mut d, &req("Петров", "s2")).unwrap();
        let st = verify_signatures(&d, &pw(&[("Иванов", "s1"), ("Петров", "bad")]));
        assert_eq!(st.len(), 2);
        assert!(st.iter().all(|s| s.integrity == Check::Valid));
        assert_eq!(st[0].authenticity, Check::Valid);
        assert_eq!(st[1].authenticity, Check::Broken);
        assert_eq!(d.module(a).unwrap().placement().origin, Point::new(5.0, 5.0));
        assert_eq!(d.module(b).unwrap().placement().origin, Point::new(5.0, 10.0));
        assert_eq!(d.module(a).unwrap().text_prop("password"), "");
    }

    #[test]
    fn mutation_breaks_integrity() {
        let mut d = Drawing::new(Rect::from_coords(0.0, 0.0, 420.0, 297.0)).unwrap();
        let v = d.add_module(ModuleTypeId::Valve, &Props::new()).unwrap();
        sign_drawing(&mut d, &req("Иванов", "s1")).unwrap();
        d.edit(v, crate::module::Edit::Move(Point::new(0.001, 0.0))).unwrap();
        let st = verify_signatures(&d, &pw(&[]));
        assert_eq!(st[0].integrity, Check::Broken);
        assert_eq!(st[0].authenticity, Check::Unchecked);
    }

    #[test]
    fn deterministic_digest() {
        let mut a = Drawing::new(Rect::from_coords(0.0, 0.0, 100.0, 100.0)).unwrap();
        let mut b = a.clone();
        sign_drawing(&mut a, &req("X", "p")).unwrap();
        sign_drawing(&mut b, &req("X", "p")).unwrap();
        assert_eq!(
            a.module(1).unwrap().text_prop("digest"),
            b.module(1).unwrap().text_prop("digest")
        );
    }

    #[test]
    fn bad_fields() {
        let mut d = Drawing::new(Rect::from_coords(0.0, 0.0, 100.0, 100.0)).unwrap();
        let mut r = req("X", "p");
        r.date = "2024-13-01".into();
        assert_eq!(sign_drawing(&mut d, &r), Err(IntegrityError::BadField("date")));
        r = req("X", "p");
        r.time = "25:00:00".into();
        assert_eq!(sign_drawing(&mut d, &r), Err(IntegrityError::BadField("time")));
    }
}
