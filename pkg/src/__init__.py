from .data_structures import Arrow, Quiver, IceQuiver, Path
from .quiver import validate, is_acyclic, enumerate_paths, longest_path_length
