# Test package for the quiver moduli toolkit
