"""Independent numerical checks of the beamsplitter picture."""
