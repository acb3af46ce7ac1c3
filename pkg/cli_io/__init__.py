# IO module for the quiver moduli toolkit
