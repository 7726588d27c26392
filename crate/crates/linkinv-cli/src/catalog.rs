use linkinv::BraidWord;

#[derive(Clone, Copy, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub braid: &'static str,
    pub components: usize,
    pub notes: &'static str,
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry { name: "unknot", braid: "1:", components: 1, notes: "trivial knot" },
    CatalogEntry { name: "Hopf", braid: "2: 1 1", components: 2, notes: "Hopf link, l_12 = 1" },
    CatalogEntry { name: "trefoil", braid: "2: 1 1 1", components: 1, notes: "trefoil = T(2,3)" },
    CatalogEntry { name: "trefoil-alt", braid: "3: 1 2 1 2", components: 1, notes: "trefoil on three strands" },
    CatalogEntry { name: "figure-eight", braid: "3: 1 -2 1 -2", components: 1, notes: "figure-eight knot 4_1" },
    CatalogEntry { name: "T(2,4)", braid: "2: 1 1 1 1", components: 2, notes: "torus link, l_12 = 2" },
    CatalogEntry { name: "split-unknots", braid: "2:", components: 2, notes: "two split circles, vanishing nabla" },
];

pub fn lookup(name: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.name.eq_ignore_ascii_case(name))
}

impl CatalogEntry {
    pub fn braid(&self) -> BraidWord {
        BraidWord::parse(self.braid).expect("catalog braids parse")
    }

    /// The braid parses and closes to the recorded number of components.
    pub fn sane(&self) -> bool {
        BraidWord::parse(self.braid).map(|b| b.close().components == self.components).unwrap_or(false)
    }
}
