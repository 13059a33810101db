#pragma once

#include "synd/hyperterm/eval.hpp"
#include "synd/hyperterm/linear_form.hpp"
#include "synd/hyperterm/parser.hpp"
#include "synd/hyperterm/shift.hpp"
#include "synd/hyperterm/support.hpp"
#include "synd/hyperterm/term.hpp"
