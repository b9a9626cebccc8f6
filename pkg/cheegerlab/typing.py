from typing import NewType, Tuple

Edge = NewType("Edge", Tuple[int, int])
