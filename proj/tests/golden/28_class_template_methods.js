class Tag {
  constructor(name, level) {
    this.name = name;
    this.level = level;
  }
  describe() {
    return `<${this.name} level=${this.level}>`;
  }
}
var t = new Tag("div", 2);
log(t.describe());
log(`wrapped ${t.describe()} ok`);
