#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "divkummer/io.hpp"

namespace py = pybind11;

namespace {

py::object json_to_py(const divkum::Json& j) {
  using divkum::Json;
  switch (j.type()) {
    case Json::value_t::null: return py::none();
    case Json::value_t::boolean: return py::bool_(j.get<bool>());
    case Json::value_t::number_integer: return py::int_(j.get<long long>());
    case Json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
    case Json::value_t::number_float: return py::float_(j.get<double>());
    case Json::value_t::string: return py::str(j.get<std::string>());
    case Json::value_t::array: {
      py::list out;
      for (const auto& v : j) out.append(json_to_py(v));
      return out;
    }
    case Json::value_t::object: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it)
        out[py::str(it.key())] = json_to_py(it.value());
      return out;
    }
    default: return py::none();
  }
}

}  // namespace

PYBIND11_MODULE(_divkummer, m) {
  m.doc() = "Exact division in modules, (J,T)-extensions and Kummer bounds";

  m.def(
      "run",
      [](const std::string& command, const std::string& doc_json) {
        divkum::Json doc = divkum::Json::parse(doc_json);
        divkum::RunResult res = divkum::run_command(command, doc);
        return py::make_tuple(res.exit_code, json_to_py(res.report));
      },
      py::arg("command"), py::arg("document"),
      "Dispatch a command on a JSON document; returns (exit_code, report).");

  m.def("commands", [] { return divkum::command_names(); },
        "Names of the available commands.");
}
