"""Decision procedures for finite 2-categories, bicategories and icons."""
