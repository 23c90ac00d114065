//! JSON form: an array of `[n, re, im]` triples with strictly increasing `n`.

use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{LaurentPoly, C64};

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.len()))?;
        for (n, c) in self.terms() {
            seq.serialize_element(&(n, c.re, c.im))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let triples = Vec::<(i32, f64, f64)>::deserialize(d)?;
        if triples.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(D::Error::custom("Laurent exponents must be strictly increasing"));
        }
        LaurentPoly::from_terms(triples.into_iter().map(|(n, re, im)| (n, C64::new(re, im)))).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let p = LaurentPoly::from_terms([(-1, C64::new(1.0, 2.0)), (3, C64::new(0.5, 0.0))]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[[-1,1.0,2.0],[3,0.5,0.0]]");
        assert_eq!(serde_json::from_str::<LaurentPoly>(&s).unwrap(), p);
    }

    #[test]
    fn rejects_unsorted_exponents() {
        assert!(serde_json::from_str::<LaurentPoly>("[[1,0,0],[1,1,0]]").is_err());
        assert!(serde_json::from_str::<LaurentPoly>("[[2,1,0],[1,1,0]]").is_err());
    }
}
