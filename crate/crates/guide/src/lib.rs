//! The book's chapters, included as documentation so that their code
//! listings run as doctests.

macro_rules! chapter {
    ($name:ident, $file:literal) => {
        #[doc = include_str!(concat!("../../../book/src/", $file))]
        pub mod $name {}
    };
}

chapter!(introduction, "introduction.md");
chapter!(standard_form, "standard_form.md");
chapter!(veering, "veering.md");
chapter!(symplectic, "symplectic.md");
chapter!(complexes, "complexes.md");
chapter!(invariants, "invariants.md");
chapter!(surgery, "surgery.md");
chapter!(classify, "classify.md");
chapter!(cli, "cli.md");
