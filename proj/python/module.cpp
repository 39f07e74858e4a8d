// placeholder during bring-up
#include <pybind11/pybind11.h>
PYBIND11_MODULE(_graphenum, m) { m.doc() = "placeholder"; }
