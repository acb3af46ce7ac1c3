"""Models package: quivers, algebras, modules, components and moduli shapes."""
