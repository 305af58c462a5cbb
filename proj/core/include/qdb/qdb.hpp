#pragma once

#include "qdb/balance.hpp"
#include "qdb/dynamics.hpp"
#include "qdb/error.hpp"
#include "qdb/examples.hpp"
#include "qdb/fluctuation.hpp"
#include "qdb/matlin.hpp"
#include "qdb/states.hpp"
