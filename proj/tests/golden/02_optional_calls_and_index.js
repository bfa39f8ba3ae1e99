var api = {
  greet: function(name) {
    return "hi " + name;
  }
};
var bare = {};
log(api.greet?.("ada"));
log(bare.greet?.("ada"));
var keys = { first: "alpha" };
var k = "first";
log(keys?.[k]);
var none = null;
log(none?.[k]);
