"""Test modules for I/O components."""