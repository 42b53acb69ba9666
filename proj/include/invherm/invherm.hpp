#pragma once

#include "invherm/core.hpp"
#include "invherm/algebra.hpp"
#include "invherm/forms.hpp"
#include "invherm/connection.hpp"
#include "invherm/search.hpp"
#include "invherm/strominger.hpp"
#include "invherm/bundle.hpp"
#include "invherm/io.hpp"
