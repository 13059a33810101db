#pragma once

#include "synd/proof/checks.hpp"
#include "synd/proof/identity.hpp"
#include "synd/proof/prove.hpp"
#include "synd/proof/vanishing.hpp"
